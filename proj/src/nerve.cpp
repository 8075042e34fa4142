#include "slices/nerve.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace slices {

namespace {

std::string encode_cell(const std::vector<long long>& c) {
    return std::string(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(long long));
}

std::vector<long long> corner_of(const SliceSystem& s, const AddressWord& w) {
    const int m = s.dim();
    std::vector<long long> c(static_cast<size_t>(m), 0);
    for (int letter : w.letters) {
        const auto& b = s.vertices()[static_cast<size_t>(letter - 1)].numerators();
        for (int i = 0; i < m; ++i)
            c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] * 2 + b[static_cast<size_t>(i)];
    }
    return c;
}

}  // namespace

bool SimplicialComplex::has_simplex(const std::vector<int>& sorted_tuple) const {
    const int q = static_cast<int>(sorted_tuple.size()) - 1;
    if (q < 0 || q >= static_cast<int>(simplices.size())) return false;
    const auto& list = simplices[static_cast<size_t>(q)];
    return std::binary_search(list.begin(), list.end(), sorted_tuple);
}

void SimplicialComplex::verify_downward_closed() const {
    for (size_t q = 0; q < simplices.size(); ++q) {
        const auto& list = simplices[q];
        if (!std::is_sorted(list.begin(), list.end()) ||
            std::adjacent_find(list.begin(), list.end()) != list.end())
            throw std::logic_error("simplex list not sorted/unique at dimension " + std::to_string(q));
        for (const auto& simplex : list) {
            if (simplex.size() != q + 1 || !std::is_sorted(simplex.begin(), simplex.end()) ||
                std::adjacent_find(simplex.begin(), simplex.end()) != simplex.end())
                throw std::logic_error("malformed simplex tuple");
            if (q == 0) continue;
            for (size_t drop = 0; drop <= q; ++drop) {
                std::vector<int> face;
                face.reserve(q);
                for (size_t i = 0; i <= q; ++i)
                    if (i != drop) face.push_back(simplex[i]);
                if (!has_simplex(face)) throw std::logic_error("missing face: complex not downward closed");
            }
        }
    }
}

std::string SimplicialComplex::stats() const {
    std::string s = std::to_string(vertices.size()) + " vertices";
    for (size_t q = 1; q < simplices.size(); ++q)
        s += ", " + std::to_string(simplices[q].size()) + " " + std::to_string(q) + "-simplices";
    return s;
}

std::vector<AddressWord> enumerate_words(const SliceSystem& s, long long j, long long k) {
    if (j < 1 || k <= j) throw std::invalid_argument("need 1 <= j < k");
    if (k - j > s.max_word_length()) throw ResourceError("word length exceeds cap");
    std::vector<AddressWord> out;
    AddressWord w{static_cast<int>(j), {}};
    auto rec = [&](auto&& self, long long level) -> void {
        if (level == k) {
            out.push_back(w);
            return;
        }
        for (int letter : s.alphabet(level)) {
            w.letters.push_back(letter);
            self(self, level + 1);
            w.letters.pop_back();
        }
    };
    rec(rec, j);
    return out;
}

std::vector<std::pair<int, int>> adjacent_vertex_pairs(const SliceSystem& s,
                                                       const std::vector<AddressWord>& vertices) {
    const int m = s.dim();
    std::unordered_map<std::string, std::vector<int>> grid;
    std::vector<std::vector<long long>> corners(vertices.size());
    for (size_t i = 0; i < vertices.size(); ++i) {
        corners[i] = corner_of(s, vertices[i]);
        grid[encode_cell(corners[i])].push_back(static_cast<int>(i));
    }
    int offsets = 1;
    for (int i = 0; i < m; ++i) offsets *= 3;

    std::vector<std::pair<int, int>> pairs;
    std::vector<long long> probe(static_cast<size_t>(m));
    for (size_t a = 0; a < vertices.size(); ++a) {
        for (int mask = 0; mask < offsets; ++mask) {
            int v = mask;
            bool ok = true;
            for (int i = 0; i < m; ++i) {
                probe[static_cast<size_t>(i)] = corners[a][static_cast<size_t>(i)] + (v % 3) - 1;
                if (probe[static_cast<size_t>(i)] < 0) ok = false;
                v /= 3;
            }
            if (!ok) continue;
            auto it = grid.find(encode_cell(probe));
            if (it == grid.end()) continue;
            for (int b : it->second)
                if (b > static_cast<int>(a)) pairs.emplace_back(static_cast<int>(a), b);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

SimplicialComplex build_nerve(const SliceSystem& s, long long j, long long k,
                              const NerveBuildOptions& opts, OracleCache* cache) {
    if (opts.q_max < 1) throw std::invalid_argument("q_max must be >= 1");
    SimplicialComplex K;
    K.q_max = opts.q_max;
    K.vertices = enumerate_words(s, j, k);
    K.simplices.assign(static_cast<size_t>(opts.q_max) + 1, {});
    for (size_t i = 0; i < K.vertices.size(); ++i)
        K.simplices[0].push_back({static_cast<int>(i)});

    const auto candidates = adjacent_vertex_pairs(s, K.vertices);
    std::vector<WordPair> pairs;
    pairs.reserve(candidates.size());
    for (auto [a, b] : candidates)
        pairs.emplace_back(K.vertices[static_cast<size_t>(a)], K.vertices[static_cast<size_t>(b)]);

    const auto verdicts = opts.parallel ? pair_verdicts_parallel(s, pairs, opts.t_max, cache)
                                        : pair_verdicts_serial(s, pairs, opts.t_max, cache);

    std::string undecided;
    for (size_t i = 0; i < verdicts.size(); ++i) {
        if (verdicts[i].undecided())
            undecided += "\n  {" + pairs[i].first.str() + ", " + pairs[i].second.str() + "}";
        else if (verdicts[i].intersect())
            K.simplices[1].push_back({candidates[i].first, candidates[i].second});
    }
    if (!undecided.empty())
        throw UndecidedError("nerve(" + std::to_string(j) + "," + std::to_string(k) + ") of " +
                             s.fingerprint() + ": undecided word sets at t_max=" +
                             std::to_string(opts.t_max) + ":" + undecided);

    std::vector<std::vector<int>> adj(K.vertices.size());
    for (const auto& e : K.simplices[1]) {
        adj[static_cast<size_t>(e[0])].push_back(e[1]);
        adj[static_cast<size_t>(e[1])].push_back(e[0]);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    for (int q = 2; q <= opts.q_max; ++q) {
        for (const auto& simplex : K.simplices[static_cast<size_t>(q - 1)]) {
            // vertices adjacent to every member, beyond the largest index
            std::vector<int> common = adj[static_cast<size_t>(simplex[0])];
            for (size_t i = 1; i < simplex.size(); ++i) {
                std::vector<int> merged;
                std::set_intersection(common.begin(), common.end(),
                                      adj[static_cast<size_t>(simplex[i])].begin(),
                                      adj[static_cast<size_t>(simplex[i])].end(), std::back_inserter(merged));
                common = std::move(merged);
            }
            for (int c : common) {
                if (c <= simplex.back()) continue;
                std::vector<const DyadicBox*> boxptrs;
                std::vector<DyadicBox> boxes;
                boxes.reserve(simplex.size() + 1);
                std::vector<AddressWord> words;
                for (int v : simplex) words.push_back(K.vertices[static_cast<size_t>(v)]);
                words.push_back(K.vertices[static_cast<size_t>(c)]);
                for (const auto& w : words) boxes.push_back(box_of_word(s, w));
                for (const auto& b : boxes) boxptrs.push_back(&b);
                if (!boxes_commonly_intersect(boxptrs)) continue;
                const auto v = pieces_intersect(s, words, opts.t_max, cache);
                if (v.undecided())
                    throw UndecidedError("nerve(" + std::to_string(j) + "," + std::to_string(k) +
                                         "): undecided " + std::to_string(words.size()) + "-way word set");
                if (v.intersect()) {
                    auto tuple = simplex;
                    tuple.push_back(c);
                    K.simplices[static_cast<size_t>(q)].push_back(std::move(tuple));
                }
            }
        }
    }
    K.verify_downward_closed();
    return K;
}

SimplicialMap projection_map(const SimplicialComplex& source, const SimplicialComplex& target) {
    SimplicialMap f;
    f.source = &source;
    f.target = &target;
    f.vertex_map.resize(source.vertices.size());
    for (size_t i = 0; i < source.vertices.size(); ++i) {
        const AddressWord image = source.vertices[i].truncated();
        const auto it = std::lower_bound(target.vertices.begin(), target.vertices.end(), image);
        if (it == target.vertices.end() || !(*it == image))
            throw std::logic_error("projection image vertex missing from target nerve");
        f.vertex_map[i] = static_cast<int>(it - target.vertices.begin());
    }
    // simpliciality: the image of every simplex, repeats collapsed, must be a
    // simplex of the target; a failure indicates an oracle inconsistency
    for (size_t q = 1; q < source.simplices.size(); ++q) {
        for (const auto& simplex : source.simplices[q]) {
            std::vector<int> image;
            for (int v : simplex) image.push_back(f.vertex_map[static_cast<size_t>(v)]);
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            if (!target.has_simplex(image))
                throw std::logic_error("projection of a simplex is not a simplex (oracle inconsistency)");
        }
    }
    return f;
}

NerveTower build_tower(const SliceSystem& s, int k_max, const NerveBuildOptions& opts,
                       OracleCache* cache) {
    if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
    NerveTower tower;
    tower.k_max = k_max;
    OracleCache local;
    OracleCache* shared = cache ? cache : &local;
    tower.complexes.reserve(static_cast<size_t>(k_max - 1));
    for (int k = 2; k <= k_max; ++k) tower.complexes.push_back(build_nerve(s, 1, k, opts, shared));
    for (size_t i = 0; i + 1 < tower.complexes.size(); ++i)
        tower.maps.push_back(projection_map(tower.complexes[i + 1], tower.complexes[i]));
    return tower;
}

}  // namespace slices
