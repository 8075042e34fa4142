#include "slices/homology.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace slices {

namespace {

using SparseCols = std::vector<std::map<int, mpz_class>>;  // column -> (row -> value)

SparseCols to_cols(const SparseIntMatrix& M) {
    SparseCols cols(static_cast<size_t>(M.cols));
    for (const auto& [r, c, v] : M.entries) {
        if (r < 0 || r >= M.rows || c < 0 || c >= M.cols) throw std::invalid_argument("entry out of range");
        if (v != 0) cols[static_cast<size_t>(c)][r] += v;
    }
    for (auto& col : cols)
        for (auto it = col.begin(); it != col.end();)
            it = it->second == 0 ? col.erase(it) : std::next(it);
    return cols;
}

void divide_by_content(std::map<int, mpz_class>& col) {
    mpz_class g = 0;
    for (const auto& [r, v] : col) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
        for (auto& [r, v] : col) v /= g;
}

// Column elimination over Z (exact, content-normalized). Pivot columns are
// retired as they are used; the surviving columns of the augmented identity
// block span the kernel. Returns the rank.
int eliminate_columns(int rows, SparseCols& cols, SparseCols* aug) {
    const size_t n = cols.size();
    std::vector<bool> active(n, true);
    std::vector<std::set<int>> row_occ(static_cast<size_t>(rows));
    for (size_t c = 0; c < n; ++c)
        for (const auto& [r, v] : cols[c]) row_occ[static_cast<size_t>(r)].insert(static_cast<int>(c));

    int rank = 0;
    for (;;) {
        // pivot: smallest |value|, then fewest column entries, then position
        int pr = -1, pc = -1;
        mpz_class pv;
        for (size_t c = 0; c < n; ++c) {
            if (!active[c] || cols[c].empty()) continue;
            for (const auto& [r, v] : cols[c]) {
                const mpz_class a = abs(v);
                const bool better =
                    pc < 0 || a < pv ||
                    (a == pv && cols[c].size() < cols[static_cast<size_t>(pc)].size());
                if (better) {
                    pr = r;
                    pc = static_cast<int>(c);
                    pv = a;
                }
            }
            if (pv == 1 && cols[static_cast<size_t>(pc)].size() <= 2) break;  // good enough
        }
        if (pc < 0) break;
        ++rank;
        active[static_cast<size_t>(pc)] = false;
        const mpz_class pivot = cols[static_cast<size_t>(pc)].at(pr);

        const auto users = row_occ[static_cast<size_t>(pr)];
        for (int c : users) {
            if (c == pc || !active[static_cast<size_t>(c)]) continue;
            const mpz_class e = cols[static_cast<size_t>(c)].at(pr);
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), pivot.get_mpz_t(), e.get_mpz_t());
            const mpz_class a = pivot / g, b = e / g;
            // col_c <- a*col_c - b*col_pivot
            auto combine = [&](std::map<int, mpz_class>& target, const std::map<int, mpz_class>& source,
                               bool track) {
                if (a != 1)
                    for (auto& [r, v] : target) v *= a;
                for (const auto& [r, v] : source) {
                    auto [it, fresh] = target.try_emplace(r, 0);
                    it->second -= b * v;
                    if (it->second == 0) {
                        target.erase(it);
                        if (track) row_occ[static_cast<size_t>(r)].erase(c);
                    } else if (fresh && track) {
                        row_occ[static_cast<size_t>(r)].insert(c);
                    }
                }
            };
            // a*old entries may cancel only against source rows, handled above;
            // a != 0 so no other entries vanish
            combine(cols[static_cast<size_t>(c)], cols[static_cast<size_t>(pc)], true);
            if (aug) combine((*aug)[static_cast<size_t>(c)], (*aug)[static_cast<size_t>(pc)], false);
            if (aug) {
                // keep entries small; scaling a kernel/rank column is harmless
                mpz_class g2 = 0;
                for (const auto& [r, v] : cols[static_cast<size_t>(c)])
                    mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), v.get_mpz_t());
                for (const auto& [r, v] : (*aug)[static_cast<size_t>(c)])
                    mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), v.get_mpz_t());
                if (g2 > 1) {
                    for (auto& [r, v] : cols[static_cast<size_t>(c)]) v /= g2;
                    for (auto& [r, v] : (*aug)[static_cast<size_t>(c)]) v /= g2;
                }
            } else {
                divide_by_content(cols[static_cast<size_t>(c)]);
            }
        }
        // retire the pivot column from the occupancy index
        for (const auto& [r, v] : cols[static_cast<size_t>(pc)])
            row_occ[static_cast<size_t>(r)].erase(pc);
    }
    if (aug) {
        // blank retired columns so callers see kernel columns only
        for (size_t c = 0; c < n; ++c)
            if (!active[c]) {
                cols[c].clear();
                (*aug)[c].clear();
            } else if (!cols[c].empty()) {
                throw std::logic_error("column elimination left an active nonzero column");
            }
    }
    return rank;
}

int rank_of_cols(int rows, SparseCols cols) { return eliminate_columns(rows, cols, nullptr); }

// full Smith normal form of a small dense remainder
std::vector<mpz_class> dense_snf(std::vector<std::vector<mpz_class>> M) {
    std::vector<mpz_class> factors;
    const size_t R = M.size();
    const size_t C = R ? M[0].size() : 0;
    size_t t = 0;
    while (t < R && t < C) {
        // find the smallest nonzero entry in the trailing block
        size_t bi = t, bj = t;
        bool found = false;
        for (size_t i = t; i < R; ++i)
            for (size_t j = t; j < C; ++j)
                if (M[i][j] != 0 && (!found || abs(M[i][j]) < abs(M[bi][bj]))) {
                    bi = i;
                    bj = j;
                    found = true;
                }
        if (!found) break;
        std::swap(M[t], M[bi]);
        for (size_t i = t; i < R; ++i) std::swap(M[i][t], M[i][bj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < R; ++i) {
                if (M[i][t] == 0) continue;
                mpz_class q = M[i][t] / M[t][t];
                for (size_t j = t; j < C; ++j) M[i][j] -= q * M[t][j];
                if (M[i][t] != 0) {  // remainder smaller than pivot: promote it
                    std::swap(M[t], M[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (M[t][j] == 0) continue;
                mpz_class q = M[t][j] / M[t][t];
                for (size_t i = t; i < R; ++i) M[i][j] -= q * M[i][t];
                if (M[t][j] != 0) {
                    for (size_t i = t; i < R; ++i) std::swap(M[i][t], M[i][j]);
                    clean = false;
                }
            }
        }
        // enforce divisibility of the rest of the block by the pivot
        bool redo = false;
        for (size_t i = t + 1; i < R && !redo; ++i)
            for (size_t j = t + 1; j < C && !redo; ++j)
                if (M[i][j] % M[t][t] != 0) {
                    for (size_t jj = t; jj < C; ++jj) M[t][jj] += M[i][jj];
                    redo = true;
                }
        if (redo) continue;
        factors.push_back(abs(M[t][t]));
        ++t;
    }
    return factors;
}

long long to_ll(const mpz_class& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("invariant factor exceeds long long");
    return v.get_si();
}

int tuple_sort_sign(std::vector<int>& tuple) {
    int inversions = 0;
    for (size_t i = 0; i < tuple.size(); ++i)
        for (size_t j = i + 1; j < tuple.size(); ++j)
            if (tuple[i] > tuple[j]) ++inversions;
    std::sort(tuple.begin(), tuple.end());
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<SparseIntMatrix> boundary_matrices(const SimplicialComplex& K) {
    std::vector<SparseIntMatrix> out(K.simplices.size());
    out[0].rows = 0;
    out[0].cols = static_cast<int>(K.count(0));
    for (size_t q = 1; q < K.simplices.size(); ++q) {
        SparseIntMatrix& M = out[q];
        M.rows = static_cast<int>(K.count(static_cast<int>(q) - 1));
        M.cols = static_cast<int>(K.count(static_cast<int>(q)));
        const auto& faces = K.simplices[q - 1];
        for (size_t c = 0; c < K.simplices[q].size(); ++c) {
            const auto& simplex = K.simplices[q][c];
            for (size_t drop = 0; drop < simplex.size(); ++drop) {
                std::vector<int> face;
                face.reserve(simplex.size() - 1);
                for (size_t i = 0; i < simplex.size(); ++i)
                    if (i != drop) face.push_back(simplex[i]);
                const auto it = std::lower_bound(faces.begin(), faces.end(), face);
                if (it == faces.end() || *it != face) throw std::logic_error("face missing in boundary");
                M.entries.emplace_back(static_cast<int>(it - faces.begin()), static_cast<int>(c),
                                       drop % 2 == 0 ? 1 : -1);
            }
        }
    }
    return out;
}

bool chain_complex_ok(const SimplicialComplex& K) {
    const auto mats = boundary_matrices(K);
    for (size_t q = 2; q < mats.size(); ++q) {
        // product entries of d_{q-1} * d_q must vanish
        SparseCols lo = to_cols(mats[q - 1]), hi = to_cols(mats[q]);
        for (const auto& col : hi) {
            std::map<int, mpz_class> acc;
            for (const auto& [r, v] : col)
                for (const auto& [rr, vv] : lo[static_cast<size_t>(r)]) acc[rr] += v * vv;
            for (const auto& [r, v] : acc)
                if (v != 0) return false;
        }
    }
    return true;
}

SmithForm smith_normal_form(const SparseIntMatrix& M) {
    SparseCols cols = to_cols(M);

    // sparse pass: retire unit pivots, leaving a Schur complement
    std::vector<std::set<int>> row_occ(static_cast<size_t>(M.rows));
    for (size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c]) row_occ[static_cast<size_t>(r)].insert(static_cast<int>(c));
    std::vector<bool> active(cols.size(), true);
    int units = 0;
    for (;;) {
        int pr = -1, pc = -1;
        size_t best_fill = 0;
        for (size_t c = 0; c < cols.size(); ++c) {
            if (!active[c]) continue;
            for (const auto& [r, v] : cols[c]) {
                if (abs(v) != 1) continue;
                const size_t fill = (cols[c].size() - 1) * (row_occ[static_cast<size_t>(r)].size() - 1);
                if (pc < 0 || fill < best_fill) {
                    pr = r;
                    pc = static_cast<int>(c);
                    best_fill = fill;
                }
            }
        }
        if (pc < 0) break;
        ++units;
        active[static_cast<size_t>(pc)] = false;
        const mpz_class pivot = cols[static_cast<size_t>(pc)].at(pr);
        const auto users = row_occ[static_cast<size_t>(pr)];
        for (int c : users) {
            if (c == pc || !active[static_cast<size_t>(c)]) continue;
            const mpz_class factor = cols[static_cast<size_t>(c)].at(pr) * pivot;  // pivot = +-1
            for (const auto& [r, v] : cols[static_cast<size_t>(pc)]) {
                auto [it, fresh] = cols[static_cast<size_t>(c)].try_emplace(r, 0);
                it->second -= factor * v;
                if (it->second == 0) {
                    cols[static_cast<size_t>(c)].erase(it);
                    row_occ[static_cast<size_t>(r)].erase(c);
                } else if (fresh) {
                    row_occ[static_cast<size_t>(r)].insert(c);
                }
            }
        }
        for (const auto& [r, v] : cols[static_cast<size_t>(pc)]) row_occ[static_cast<size_t>(r)].erase(pc);
        // drop the pivot row entirely
        for (int c : row_occ[static_cast<size_t>(pr)])
            cols[static_cast<size_t>(c)].erase(pr);
        row_occ[static_cast<size_t>(pr)].clear();
    }

    // dense pass on what is left
    std::vector<int> live_rows;
    std::set<int> live_row_set;
    std::vector<size_t> live_cols;
    for (size_t c = 0; c < cols.size(); ++c)
        if (active[c] && !cols[c].empty()) {
            live_cols.push_back(c);
            for (const auto& [r, v] : cols[c]) live_row_set.insert(r);
        }
    live_rows.assign(live_row_set.begin(), live_row_set.end());
    std::vector<std::vector<mpz_class>> dense(live_rows.size(),
                                              std::vector<mpz_class>(live_cols.size(), 0));
    for (size_t jc = 0; jc < live_cols.size(); ++jc)
        for (const auto& [r, v] : cols[live_cols[jc]]) {
            const size_t ir = static_cast<size_t>(
                std::lower_bound(live_rows.begin(), live_rows.end(), r) - live_rows.begin());
            dense[ir][jc] = v;
        }
    const auto rest = dense_snf(std::move(dense));

    SmithForm f;
    f.invariant_factors.assign(static_cast<size_t>(units), 1);
    for (const auto& v : rest) f.invariant_factors.push_back(to_ll(v));
    return f;
}

int matrix_rank(const SparseIntMatrix& M) { return rank_of_cols(M.rows, to_cols(M)); }

HomologyReport homology(const SimplicialComplex& K) {
    const auto mats = boundary_matrices(K);
    const int q_max = static_cast<int>(K.simplices.size()) - 1;

    std::vector<SmithForm> snf(mats.size());
    std::vector<int> rank(mats.size() + 1, 0);
    for (size_t q = 1; q < mats.size(); ++q) {
        snf[q] = smith_normal_form(mats[q]);
        rank[q] = snf[q].rank();
    }

    HomologyReport rep;
    rep.degrees.resize(static_cast<size_t>(q_max) + 1);
    for (int q = 0; q <= q_max; ++q) {
        rep.simplex_counts.push_back(static_cast<long long>(K.count(q)));
        DegreeHomology& deg = rep.degrees[static_cast<size_t>(q)];
        const bool have_next = q + 1 <= q_max || K.count(q) == 0;
        if (!have_next) continue;  // would need (q+1)-simplices beyond q_max
        deg.computed = true;
        const long long next_rank = q + 1 <= q_max ? rank[static_cast<size_t>(q + 1)] : 0;
        deg.betti = static_cast<long long>(K.count(q)) - rank[static_cast<size_t>(q)] - next_rank;
        if (q + 1 <= q_max)
            for (long long d : snf[static_cast<size_t>(q + 1)].invariant_factors)
                if (d > 1) deg.torsion.push_back(d);
    }
    rep.has_2_simplices = K.count(2) > 0;
    return rep;
}

long long component_count(const SimplicialComplex& K) {
    std::vector<int> parent(K.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    if (K.simplices.size() > 1)
        for (const auto& e : K.simplices[1]) parent[static_cast<size_t>(find(e[0]))] = find(e[1]);
    long long components = 0;
    for (size_t i = 0; i < parent.size(); ++i) components += find(static_cast<int>(i)) == static_cast<int>(i);
    return components;
}

long long induced_rank(const SimplicialMap& f, int q) {
    if (!f.source || !f.target) throw std::invalid_argument("unbound simplicial map");
    const SimplicialComplex& src = *f.source;
    const SimplicialComplex& tgt = *f.target;
    if (q < 0 || q >= static_cast<int>(src.simplices.size()) ||
        q + 1 >= static_cast<int>(tgt.simplices.size()))
        throw std::domain_error("degree out of range for induced rank");
    if (src.count(q) == 0) return 0;

    const auto src_mats = boundary_matrices(src);
    const auto tgt_mats = boundary_matrices(tgt);

    // cycle basis of the source in degree q
    SparseCols cycles;
    if (q == 0) {
        cycles.resize(src.count(0));
        for (size_t i = 0; i < src.count(0); ++i) cycles[i][static_cast<int>(i)] = 1;
    } else {
        SparseCols cols = to_cols(src_mats[static_cast<size_t>(q)]);
        SparseCols aug(cols.size());
        for (size_t c = 0; c < cols.size(); ++c) aug[c][static_cast<int>(c)] = 1;
        eliminate_columns(src_mats[static_cast<size_t>(q)].rows, cols, &aug);
        for (auto& col : aug)
            if (!col.empty()) cycles.push_back(std::move(col));
    }

    // push cycles through the chain map
    const auto& tgt_simplices = tgt.simplices[static_cast<size_t>(q)];
    SparseCols images;
    for (const auto& cycle : cycles) {
        std::map<int, mpz_class> image;
        for (const auto& [srcidx, coeff] : cycle) {
            std::vector<int> tuple;
            for (int v : src.simplices[static_cast<size_t>(q)][static_cast<size_t>(srcidx)])
                tuple.push_back(f.vertex_map[static_cast<size_t>(v)]);
            std::vector<int> probe = tuple;
            std::sort(probe.begin(), probe.end());
            if (std::adjacent_find(probe.begin(), probe.end()) != probe.end()) continue;  // degenerate
            const int sign = tuple_sort_sign(tuple);
            const auto it = std::lower_bound(tgt_simplices.begin(), tgt_simplices.end(), tuple);
            if (it == tgt_simplices.end() || *it != tuple)
                throw std::logic_error("chain image is not a target simplex");
            image[static_cast<int>(it - tgt_simplices.begin())] += sign * coeff;
        }
        for (auto it = image.begin(); it != image.end();)
            it = it->second == 0 ? image.erase(it) : std::next(it);
        if (!image.empty()) images.push_back(std::move(image));
    }

    // rank modulo target boundaries: rank([images | B]) - rank(B)
    SparseCols boundaries = to_cols(tgt_mats[static_cast<size_t>(q + 1)]);
    const int rows = static_cast<int>(tgt.count(q));
    SparseCols combined = images;
    for (const auto& col : boundaries) combined.push_back(col);
    return rank_of_cols(rows, std::move(combined)) - rank_of_cols(rows, std::move(boundaries));
}

}  // namespace slices
