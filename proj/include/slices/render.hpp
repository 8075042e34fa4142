#pragma once

#include <string>

#include "slices/geometry.hpp"
#include "slices/nerve.hpp"

namespace slices {

// SVG of the depth-`depth` box cover of the slice in the unit square;
// only meaningful for ambient dimension 3 (square pieces). Deterministic
// bytes: all coordinates are integers on the 2^depth grid.
std::string render_cover_svg(const SliceSystem& s, int depth);

// SVG of the 1-skeleton of a nerve. For ambient dimension 3 vertices sit at
// piece box centers; otherwise they are placed on a circle.
std::string render_nerve_svg(const SliceSystem& s, const SimplicialComplex& K);

}  // namespace slices
