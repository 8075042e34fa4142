#include "slices/intersection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace slices {

namespace {

constexpr size_t kMaxSurvivorTuples = 4096;
constexpr int kPixelPadCap = 12;

struct WordSetInfo {
    int start_level;
    int length;
    long long piece_level;  // k: the level whose limit set the pieces contract
};

WordSetInfo validate_words(const SliceSystem& s, const std::vector<AddressWord>& words) {
    if (words.empty()) throw std::invalid_argument("no words given");
    const int j = words[0].start_level;
    const int n = words[0].length();
    if (n < 1) throw std::invalid_argument("words must be nonempty");
    for (const auto& w : words) {
        if (w.start_level != j || w.length() != n)
            throw std::invalid_argument("words must share start level and length");
        s.check_word(w);
    }
    for (size_t a = 0; a < words.size(); ++a)
        for (size_t b = a + 1; b < words.size(); ++b)
            if (words[a] == words[b]) throw std::invalid_argument("duplicate words");
    return {j, n, j + n};
}

// integer lower corner of box_of_word at exponent = word length (Horner)
std::vector<long long> word_corner(const SliceSystem& s, const AddressWord& w) {
    const int m = s.dim();
    std::vector<long long> c(static_cast<size_t>(m), 0);
    for (int letter : w.letters) {
        const auto& b = s.vertices()[static_cast<size_t>(letter - 1)].numerators();
        for (int i = 0; i < m; ++i)
            c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] * 2 + b[static_cast<size_t>(i)];
    }
    return c;
}

struct Candidate {
    DyadicVector point;
    std::vector<int> ext;
    int tail;
};

// Coding points of the piece of w whose address is constant from exactly
// `depth` letters past w. Sorted by point; first occurrence has the
// lexicographically smallest (ext, tail).
std::vector<Candidate> tail_candidates(const SliceSystem& s, const AddressWord& w, int depth) {
    std::vector<Candidate> out;
    const long long k = w.end_level();
    for (int t = 0; t < depth; ++t)
        if (!s.level_available(k + t)) return out;  // prefix-only expansion exhausted

    const int m = s.dim();
    const int n = w.length();
    std::vector<int> ext;
    std::vector<long long> corner = word_corner(s, w);
    auto rec = [&](auto&& self, int t) -> void {
        if (t == depth) {
            for (int i = 1; i <= s.ambient_dim(); ++i) {
                if (!s.letter_eventually_admissible(i, k + depth)) continue;
                const auto& b = s.vertices()[static_cast<size_t>(i - 1)].numerators();
                std::vector<long long> num(static_cast<size_t>(m));
                for (int c = 0; c < m; ++c)
                    num[static_cast<size_t>(c)] = corner[static_cast<size_t>(c)] + b[static_cast<size_t>(c)];
                out.push_back({DyadicVector(std::move(num), n + depth), ext, i});
            }
            return;
        }
        for (int letter : s.alphabet(k + t)) {
            const auto& b = s.vertices()[static_cast<size_t>(letter - 1)].numerators();
            for (int c = 0; c < m; ++c)
                corner[static_cast<size_t>(c)] = corner[static_cast<size_t>(c)] * 2 + b[static_cast<size_t>(c)];
            ext.push_back(letter);
            self(self, t + 1);
            ext.pop_back();
            for (int c = 0; c < m; ++c)
                corner[static_cast<size_t>(c)] = (corner[static_cast<size_t>(c)] - b[static_cast<size_t>(c)]) / 2;
        }
    };
    rec(rec, 0);
    std::stable_sort(out.begin(), out.end(),
                     [](const Candidate& a, const Candidate& b) { return a.point < b.point; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Candidate& a, const Candidate& b) { return a.point == b.point; }),
              out.end());
    return out;
}

// smallest point present in every sorted candidate list
std::optional<std::vector<size_t>> first_common(const std::vector<std::vector<Candidate>>& lists) {
    const size_t q = lists.size();
    for (const auto& l : lists)
        if (l.empty()) return std::nullopt;
    std::vector<size_t> idx(q, 0);
    for (;;) {
        size_t hi = 0;
        for (size_t p = 1; p < q; ++p)
            if (lists[p][idx[p]].point > lists[hi][idx[hi]].point) hi = p;
        bool all_equal = true;
        for (size_t p = 0; p < q; ++p) {
            while (idx[p] < lists[p].size() && lists[p][idx[p]].point < lists[hi][idx[hi]].point) ++idx[p];
            if (idx[p] == lists[p].size()) return std::nullopt;
            if (!(lists[p][idx[p]].point == lists[hi][idx[hi]].point)) all_equal = false;
        }
        if (all_equal) return idx;
    }
}

// tuples are flattened q*m corner vectors at a shared depth; unit boxes
// [c, c+1] commonly intersect iff max - min <= 1 on every axis
bool tuple_boxes_meet(const std::vector<long long>& corners, size_t q, int m) {
    for (int i = 0; i < m; ++i) {
        long long lo = corners[static_cast<size_t>(i)], hi = lo;
        for (size_t p = 1; p < q; ++p) {
            const long long c = corners[p * static_cast<size_t>(m) + static_cast<size_t>(i)];
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        if (hi - lo > 1) return false;
    }
    return true;
}

// all child tuples of `tuple` (one alphabet letter per piece) whose boxes meet
void expand_tuple(const SliceSystem& s, const std::vector<long long>& tuple, size_t q, int m,
                  const std::vector<int>& letters, std::vector<std::vector<long long>>& out) {
    std::vector<long long> child(q * static_cast<size_t>(m));
    auto rec = [&](auto&& self, size_t p) -> void {
        if (p == q) {
            if (tuple_boxes_meet(child, q, m)) out.push_back(child);
            return;
        }
        for (int letter : letters) {
            const auto& b = s.vertices()[static_cast<size_t>(letter - 1)].numerators();
            bool feasible = true;
            for (int i = 0; i < m; ++i) {
                const long long c =
                    tuple[p * static_cast<size_t>(m) + static_cast<size_t>(i)] * 2 + b[static_cast<size_t>(i)];
                child[p * static_cast<size_t>(m) + static_cast<size_t>(i)] = c;
                // prune against pieces already chosen
                for (size_t pp = 0; pp < p && feasible; ++pp) {
                    const long long cc = child[pp * static_cast<size_t>(m) + static_cast<size_t>(i)];
                    if (c - cc > 1 || cc - c > 1) feasible = false;
                }
                if (!feasible) break;
            }
            if (feasible) self(self, p + 1);
        }
    };
    rec(rec, 0);
}

IntersectionVerdict pieces_intersect_canonical(const SliceSystem& s, const std::vector<AddressWord>& words,
                                               int t_max) {
    const WordSetInfo info = validate_words(s, words);
    if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
    if (info.length + t_max > s.max_word_length())
        throw ResourceError("word length " + std::to_string(info.length) + " plus pad " +
                            std::to_string(t_max) + " exceeds cap " + std::to_string(s.max_word_length()));
    const size_t q = words.size();
    const int m = s.dim();

    IntersectionVerdict v;
    if (q == 1) {
        v.kind = IntersectionVerdict::Kind::Intersect;
        v.witness = coding_point(s, words[0], 1);
        v.addresses = {{words[0], 1}};
        return v;
    }

    std::vector<long long> base(q * static_cast<size_t>(m));
    for (size_t p = 0; p < q; ++p) {
        const auto c = word_corner(s, words[p]);
        std::copy(c.begin(), c.end(), base.begin() + static_cast<long>(p * static_cast<size_t>(m)));
    }
    if (!tuple_boxes_meet(base, q, m)) {
        v.kind = IntersectionVerdict::Kind::Disjoint;
        v.depth = 0;
        return v;
    }

    std::vector<std::vector<long long>> survivors{base};
    bool refining = true;

    for (int depth = 0; depth <= t_max; ++depth) {
        std::vector<std::vector<Candidate>> lists(q);
        for (size_t p = 0; p < q; ++p) lists[p] = tail_candidates(s, words[p], depth);
        if (auto idx = first_common(lists)) {
            v.kind = IntersectionVerdict::Kind::Intersect;
            v.depth = depth;
            v.witness = lists[0][(*idx)[0]].point;
            for (size_t p = 0; p < q; ++p) {
                const Candidate& c = lists[p][(*idx)[p]];
                AddressWord prefix = words[p];
                prefix.letters.insert(prefix.letters.end(), c.ext.begin(), c.ext.end());
                v.addresses.push_back({std::move(prefix), c.tail});
            }
            return v;
        }
        if (depth == t_max) break;
        if (!refining) continue;
        const long long level = info.piece_level + depth;
        if (!s.level_available(level)) {
            refining = false;
            continue;
        }
        const std::vector<int> letters = s.alphabet(level);
        std::vector<std::vector<long long>> next;
        for (const auto& tuple : survivors) {
            expand_tuple(s, tuple, q, m, letters, next);
            if (next.size() > kMaxSurvivorTuples) break;
        }
        if (next.empty()) {
            v.kind = IntersectionVerdict::Kind::Disjoint;
            v.depth = depth + 1;
            return v;
        }
        if (next.size() > kMaxSurvivorTuples) {
            refining = false;  // cannot certify disjointness past this point
        } else {
            survivors = std::move(next);
        }
    }
    v.kind = IntersectionVerdict::Kind::Undecided;
    v.depth = t_max;
    return v;
}

std::string cache_key(const SliceSystem& s, const std::vector<AddressWord>& sorted_words, int t_max) {
    std::string key = s.fingerprint() + "|t" + std::to_string(t_max);
    for (const auto& w : sorted_words) key += "|" + w.str();
    return key;
}

}  // namespace

std::string IntersectionVerdict::str() const {
    switch (kind) {
        case Kind::Disjoint:
            return "disjoint(depth=" + std::to_string(depth) + ")";
        case Kind::Intersect:
            return "intersect(witness=" + witness.str() + ")";
        default:
            return "undecided(depth=" + std::to_string(depth) + ")";
    }
}

std::optional<IntersectionVerdict> OracleCache::lookup(const std::string& key) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    hits_.fetch_add(1);
    return it->second;
}

void OracleCache::store(const std::string& key, const IntersectionVerdict& v) {
    std::unique_lock lock(mu_);
    map_.emplace(key, v);
}

size_t OracleCache::size() const {
    std::shared_lock lock(mu_);
    return map_.size();
}

IntersectionVerdict pieces_intersect(const SliceSystem& s, const std::vector<AddressWord>& words,
                                     int t_max, OracleCache* cache) {
    // canonical (sorted) word order keyed for the cache; addresses are mapped
    // back to the caller's order
    std::vector<size_t> perm(words.size());
    std::iota(perm.begin(), perm.end(), size_t{0});
    std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) { return words[a] < words[b]; });
    std::vector<AddressWord> sorted;
    sorted.reserve(words.size());
    for (size_t i : perm) sorted.push_back(words[i]);

    IntersectionVerdict canonical;
    const std::string key = cache ? cache_key(s, sorted, t_max) : std::string();
    if (cache) {
        if (auto hit = cache->lookup(key)) {
            canonical = std::move(*hit);
        } else {
            canonical = pieces_intersect_canonical(s, sorted, t_max);
            cache->store(key, canonical);
        }
    } else {
        canonical = pieces_intersect_canonical(s, sorted, t_max);
    }

    if (canonical.addresses.empty()) return canonical;
    IntersectionVerdict out = canonical;
    for (size_t i = 0; i < perm.size(); ++i) out.addresses[perm[i]] = canonical.addresses[i];
    return out;
}

MembershipResult point_in_piece(const SliceSystem& s, const DyadicVector& p, const AddressWord& w,
                                long long k, int t_max) {
    s.check_word(w);
    if (w.end_level() != k) throw std::invalid_argument("word must end at level k");
    if (p.dim() != s.dim()) throw std::invalid_argument("point dimension mismatch");
    if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");

    MembershipResult r;
    if (!box_of_word(s, w).contains(p)) {
        r.kind = MembershipResult::Kind::No;
        r.depth = 0;
        return r;
    }
    const int n = w.length();
    if (p.exponent() + n > kMaxExponent) throw ResourceError("point exponent too large to pull back");

    // pull p back through the piece map: x = p*2^n - corner
    const int m = s.dim();
    const std::vector<long long> corner = word_corner(s, w);
    std::vector<long long> xnum(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        xnum[static_cast<size_t>(i)] = (p.numerators()[static_cast<size_t>(i)] << n) -
                                       (corner[static_cast<size_t>(i)] << p.exponent());
    const DyadicVector x(std::move(xnum), p.exponent());

    // survivors: integer corners (scale 2^depth) of cover boxes containing x
    std::vector<std::pair<std::vector<long long>, std::vector<int>>> survivors{
        {std::vector<long long>(static_cast<size_t>(m), 0), {}}};
    auto contains_x = [&](const std::vector<long long>& c, int depth) {
        const int e = std::max(depth, x.exponent());
        for (int i = 0; i < m; ++i) {
            const long long lo = c[static_cast<size_t>(i)] << (e - depth);
            const long long xa = x.numerator_at(i, e);
            if (xa < lo || xa > lo + (1LL << (e - depth))) return false;
        }
        return true;
    };

    for (int depth = 0; depth <= t_max; ++depth) {
        for (const auto& [c, ext] : survivors) {
            for (int i = 1; i <= s.ambient_dim(); ++i) {
                if (!s.letter_eventually_admissible(i, k + depth)) continue;
                const auto& b = s.vertices()[static_cast<size_t>(i - 1)].numerators();
                bool eq = true;
                for (int a = 0; a < m && eq; ++a) {
                    std::vector<long long> num{c[static_cast<size_t>(a)] + b[static_cast<size_t>(a)]};
                    const DyadicVector coord(std::move(num), depth);
                    std::vector<long long> xa{x.numerators()[static_cast<size_t>(a)]};
                    eq = coord == DyadicVector(std::move(xa), x.exponent());
                }
                if (eq) {
                    r.kind = MembershipResult::Kind::Yes;
                    r.depth = depth;
                    AddressWord prefix = w;
                    prefix.letters.insert(prefix.letters.end(), ext.begin(), ext.end());
                    r.address = {std::move(prefix), i};
                    return r;
                }
            }
        }
        if (depth == t_max) break;
        if (!s.level_available(k + depth)) break;  // cannot refine further
        std::vector<std::pair<std::vector<long long>, std::vector<int>>> next;
        for (const auto& [c, ext] : survivors) {
            for (int letter : s.alphabet(k + depth)) {
                const auto& b = s.vertices()[static_cast<size_t>(letter - 1)].numerators();
                std::vector<long long> cc(static_cast<size_t>(m));
                for (int i = 0; i < m; ++i)
                    cc[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] * 2 + b[static_cast<size_t>(i)];
                if (contains_x(cc, depth + 1)) {
                    auto e2 = ext;
                    e2.push_back(letter);
                    next.emplace_back(std::move(cc), std::move(e2));
                }
            }
        }
        if (next.empty()) {
            r.kind = MembershipResult::Kind::No;
            r.depth = depth + 1;
            return r;
        }
        survivors = std::move(next);
    }
    r.kind = MembershipResult::Kind::Undecided;
    r.depth = t_max;
    return r;
}

bool pixel_oracle(const SliceSystem& s, const std::vector<AddressWord>& words, int pad) {
    const WordSetInfo info = validate_words(s, words);
    if (pad < 0 || pad > kPixelPadCap) throw std::invalid_argument("pixel pad out of range");
    if (info.length + pad > s.max_word_length()) throw ResourceError("pixel depth exceeds word cap");
    const size_t q = words.size();
    const int m = s.dim();

    // depth-pad integer corners per piece at scale 2^(n+pad)
    std::vector<std::vector<std::vector<long long>>> covers(q);
    for (size_t p = 0; p < q; ++p) {
        std::vector<long long> corner = word_corner(s, words[p]);
        auto rec = [&](auto&& self, int t) -> void {
            if (t == pad) {
                covers[p].push_back(corner);
                return;
            }
            for (int letter : s.alphabet(info.piece_level + t)) {
                const auto& b = s.vertices()[static_cast<size_t>(letter - 1)].numerators();
                for (int i = 0; i < m; ++i)
                    corner[static_cast<size_t>(i)] =
                        corner[static_cast<size_t>(i)] * 2 + b[static_cast<size_t>(i)];
                self(self, t + 1);
                for (int i = 0; i < m; ++i)
                    corner[static_cast<size_t>(i)] =
                        (corner[static_cast<size_t>(i)] - b[static_cast<size_t>(i)]) / 2;
            }
        };
        rec(rec, 0);
    }

    auto encode = [](const std::vector<long long>& c) {
        return std::string(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(long long));
    };
    std::vector<std::unordered_set<std::string>> sets(q);
    for (size_t p = 1; p < q; ++p)
        for (const auto& c : covers[p]) sets[p].insert(encode(c));

    // for each cell of the first cover, search neighbor cells of the others
    // with a running interval intersection
    std::vector<long long> lo(static_cast<size_t>(m)), hi(static_cast<size_t>(m));
    std::vector<long long> probe(static_cast<size_t>(m));
    auto rec2 = [&](auto&& self, size_t p, const std::vector<long long>& c0,
                    std::vector<long long> rlo, std::vector<long long> rhi) -> bool {
        if (p == q) return true;
        // enumerate offsets in {-1,0,1}^m around the anchor cell
        int total = 1;
        for (int i = 0; i < m; ++i) total *= 3;
        for (int mask = 0; mask < total; ++mask) {
            int v = mask;
            bool ok = true;
            for (int i = 0; i < m; ++i) {
                probe[static_cast<size_t>(i)] = c0[static_cast<size_t>(i)] + (v % 3) - 1;
                if (probe[static_cast<size_t>(i)] < 0) ok = false;
                v /= 3;
            }
            if (!ok || !sets[p].count(encode(probe))) continue;
            auto nlo = rlo, nhi = rhi;
            bool meet = true;
            for (int i = 0; i < m; ++i) {
                nlo[static_cast<size_t>(i)] = std::max(nlo[static_cast<size_t>(i)], probe[static_cast<size_t>(i)]);
                nhi[static_cast<size_t>(i)] =
                    std::min(nhi[static_cast<size_t>(i)], probe[static_cast<size_t>(i)] + 1);
                if (nlo[static_cast<size_t>(i)] > nhi[static_cast<size_t>(i)]) meet = false;
            }
            if (meet && self(self, p + 1, c0, nlo, nhi)) return true;
        }
        return false;
    };

    for (const auto& c0 : covers[0]) {
        for (int i = 0; i < m; ++i) {
            lo[static_cast<size_t>(i)] = c0[static_cast<size_t>(i)];
            hi[static_cast<size_t>(i)] = c0[static_cast<size_t>(i)] + 1;
        }
        if (q == 1 || rec2(rec2, 1, c0, lo, hi)) return true;
    }
    return false;
}

}  // namespace slices
