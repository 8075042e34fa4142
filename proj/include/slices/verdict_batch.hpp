#pragma once

#include <utility>
#include <vector>

#include "slices/intersection.hpp"

namespace slices {

using WordPair = std::pair<AddressWord, AddressWord>;

// Batch intersection verdicts for candidate vertex pairs. The serial kernel
// is the reference; the parallel kernel must produce identical output for
// any thread count.
std::vector<IntersectionVerdict> pair_verdicts_serial(const SliceSystem& s,
                                                      const std::vector<WordPair>& pairs, int t_max,
                                                      OracleCache* cache = nullptr);
std::vector<IntersectionVerdict> pair_verdicts_parallel(const SliceSystem& s,
                                                        const std::vector<WordPair>& pairs, int t_max,
                                                        OracleCache* cache = nullptr);

}  // namespace slices
