#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "slices/nerve.hpp"

namespace slices {

struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::tuple<int, int, long long>> entries;  // (row, col, value)
};

// matrices[q] is the boundary from q-chains to (q-1)-chains with the
// alternating-sign convention on sorted vertex tuples; matrices[0] is the
// zero map out of the vertices.
std::vector<SparseIntMatrix> boundary_matrices(const SimplicialComplex& K);

// exact check that consecutive boundary matrices compose to zero
bool chain_complex_ok(const SimplicialComplex& K);

struct SmithForm {
    std::vector<long long> invariant_factors;  // d_1 | d_2 | ... , all positive
    int rank() const { return static_cast<int>(invariant_factors.size()); }
};

// Invariant factors over the integers; exact, arbitrary-precision internally.
SmithForm smith_normal_form(const SparseIntMatrix& M);

int matrix_rank(const SparseIntMatrix& M);

struct DegreeHomology {
    bool computed = false;
    long long betti = 0;
    std::vector<long long> torsion;  // nontrivial invariant factors of the next boundary
};

// Betti numbers and torsion per degree, plus the simplex census. Cohomology
// ranks of a finite complex agree with the betti numbers; cohomology torsion
// is not tracked. Degrees whose computation would need simplices beyond the
// complex's q_max are left marked not computed.
struct HomologyReport {
    std::vector<DegreeHomology> degrees;  // index q = 0..q_max
    std::vector<long long> simplex_counts;
    bool has_2_simplices = false;

    long long betti0() const { return degrees[0].betti; }
};

HomologyReport homology(const SimplicialComplex& K);

// connected components of the 1-skeleton by union-find (independent of the
// boundary-matrix pipeline)
long long component_count(const SimplicialComplex& K);

// rank of the map induced on H_q by a simplicial map, computed from the image
// of a cycle basis reduced against target boundaries
long long induced_rank(const SimplicialMap& f, int q);

}  // namespace slices
