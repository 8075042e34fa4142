#include "slices/verdict_batch.hpp"

#include <exception>
#include <stdexcept>
#include <string>

namespace slices {

std::vector<IntersectionVerdict> pair_verdicts_serial(const SliceSystem& s,
                                                      const std::vector<WordPair>& pairs, int t_max,
                                                      OracleCache* cache) {
    std::vector<IntersectionVerdict> out(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i)
        out[i] = pieces_intersect(s, {pairs[i].first, pairs[i].second}, t_max, cache);
    return out;
}

std::vector<IntersectionVerdict> pair_verdicts_parallel(const SliceSystem& s,
                                                        const std::vector<WordPair>& pairs, int t_max,
                                                        OracleCache* cache) {
    std::vector<IntersectionVerdict> out(pairs.size());
    std::exception_ptr error;
    const long long n = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) {
        try {
            out[static_cast<size_t>(i)] =
                pieces_intersect(s, {pairs[static_cast<size_t>(i)].first, pairs[static_cast<size_t>(i)].second},
                                 t_max, cache);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace slices
