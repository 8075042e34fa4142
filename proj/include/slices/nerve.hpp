#pragma once

#include <string>
#include <vector>

#include "slices/intersection.hpp"
#include "slices/verdict_batch.hpp"

namespace slices {

// Finite abstract simplicial complex over address-word vertices. Simplices
// are stored per dimension as sorted index tuples, lists sorted
// lexicographically; the complex is downward closed.
struct SimplicialComplex {
    std::vector<AddressWord> vertices;                    // lexicographically sorted
    std::vector<std::vector<std::vector<int>>> simplices; // simplices[q]
    int q_max = 1;

    size_t count(int q) const {
        return q < static_cast<int>(simplices.size()) ? simplices[static_cast<size_t>(q)].size() : 0;
    }
    bool has_simplex(const std::vector<int>& sorted_tuple) const;
    void verify_downward_closed() const;  // throws std::logic_error on violation
    std::string stats() const;
};

// Vertex assignment whose image of every simplex is a simplex (after
// collapsing repeats).
struct SimplicialMap {
    const SimplicialComplex* source = nullptr;
    const SimplicialComplex* target = nullptr;
    std::vector<int> vertex_map;  // source vertex index -> target vertex index
};

struct NerveBuildOptions {
    int q_max = 3;
    int t_max = 6;
    bool parallel = true;
};

// Nerve of the canonical depth-(k-j) cover of the level-j limit set: vertices
// are the words of levels j..k-1, simplices the word sets whose pieces share
// a point. Any Undecided verdict aborts with UndecidedError naming the words.
SimplicialComplex build_nerve(const SliceSystem& s, long long j, long long k,
                              const NerveBuildOptions& opts = {}, OracleCache* cache = nullptr);

// Letter-dropping map from the nerve at (j, k+1) onto the nerve at (j, k).
SimplicialMap projection_map(const SimplicialComplex& source, const SimplicialComplex& target);

// Complexes N_{1,k} for k = 2..k_max and the maps N_{1,k+1} -> N_{1,k}.
// Move-only: maps point into `complexes`.
struct NerveTower {
    int k_max = 2;
    std::vector<SimplicialComplex> complexes;  // index i holds N_{1, i+2}
    std::vector<SimplicialMap> maps;           // maps[i]: complexes[i+1] -> complexes[i]

    NerveTower() = default;
    NerveTower(const NerveTower&) = delete;
    NerveTower& operator=(const NerveTower&) = delete;
    NerveTower(NerveTower&&) = default;
    NerveTower& operator=(NerveTower&&) = default;
};

NerveTower build_tower(const SliceSystem& s, int k_max, const NerveBuildOptions& opts = {},
                       OracleCache* cache = nullptr);

// box-adjacent vertex pairs (i < j), the sound candidate pre-filter for edges
std::vector<std::pair<int, int>> adjacent_vertex_pairs(const SliceSystem& s,
                                                       const std::vector<AddressWord>& vertices);

std::vector<AddressWord> enumerate_words(const SliceSystem& s, long long j, long long k);

}  // namespace slices
