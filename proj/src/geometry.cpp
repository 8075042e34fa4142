#include "slices/geometry.hpp"

#include <stdexcept>

namespace slices {

std::vector<DyadicVector> vertex_set(int d) {
    if (d < 2) throw std::domain_error("ambient dimension must be >= 2");
    std::vector<DyadicVector> vs;
    vs.reserve(static_cast<size_t>(d));
    const int m = d - 1;
    for (int i = 1; i <= d; ++i) {
        std::vector<long long> num(static_cast<size_t>(m), 0);
        for (int j = m - (i - 1); j < m; ++j) num[static_cast<size_t>(j)] = 1;
        vs.emplace_back(std::move(num), 0);
    }
    return vs;
}

AddressWord AddressWord::extended(int letter) const {
    AddressWord w = *this;
    w.letters.push_back(letter);
    return w;
}

AddressWord AddressWord::truncated() const {
    if (letters.empty()) throw std::invalid_argument("cannot truncate empty word");
    AddressWord w = *this;
    w.letters.pop_back();
    return w;
}

std::string AddressWord::str() const {
    std::string s;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(letters[i]);
    }
    if (s.empty()) s = "-";
    return s + "@" + std::to_string(start_level);
}

SliceSystem::SliceSystem(BinaryExpansion expansion, int ambient_dim, int max_word_length)
    : d_(ambient_dim),
      expansion_(std::move(expansion)),
      vertices_(vertex_set(ambient_dim)),
      max_word_length_(max_word_length) {
    if (max_word_length_ < 1 || max_word_length_ > kMaxExponent)
        throw std::invalid_argument("max_word_length out of range");
}

SliceSystem build_slice_system(BinaryExpansion e, int ambient_dim, int max_word_length) {
    return SliceSystem(std::move(e), ambient_dim, max_word_length);
}

bool SliceSystem::level_available(long long level) const {
    return level >= 1 && level <= expansion_.digits_available();
}

bool SliceSystem::full_alphabet(long long level) const { return expansion_.digit(level) == 1; }

int SliceSystem::alphabet_size(long long level) const { return full_alphabet(level) ? d_ : 1; }

std::vector<int> SliceSystem::alphabet(long long level) const {
    if (!full_alphabet(level)) return {1};
    std::vector<int> a(static_cast<size_t>(d_));
    for (int i = 0; i < d_; ++i) a[static_cast<size_t>(i)] = i + 1;
    return a;
}

bool SliceSystem::letter_admissible(int letter, long long level) const {
    if (letter < 1 || letter > d_) return false;
    return letter == 1 || full_alphabet(level);
}

bool SliceSystem::letter_eventually_admissible(int letter, long long from_level) const {
    if (letter < 1 || letter > d_) return false;
    if (letter == 1) return true;
    if (expansion_.prefix_only()) return false;  // tail digits unknown
    const long long pre_len = static_cast<long long>(expansion_.preperiod().size());
    for (long long j = from_level; j <= pre_len; ++j)
        if (expansion_.digit(j) == 0) return false;
    return expansion_.period() == Bits{1};
}

void SliceSystem::check_word(const AddressWord& w) const {
    if (w.start_level < 1) throw std::invalid_argument("word start level must be >= 1");
    if (w.length() > max_word_length_)
        throw ResourceError("word length " + std::to_string(w.length()) + " exceeds cap " +
                            std::to_string(max_word_length_));
    for (int t = 0; t < w.length(); ++t)
        if (!letter_admissible(w.letters[static_cast<size_t>(t)], w.start_level + t))
            throw std::invalid_argument("letter " + std::to_string(w.letters[static_cast<size_t>(t)]) +
                                        " not admissible at level " + std::to_string(w.start_level + t));
}

std::string SliceSystem::fingerprint() const {
    return "d" + std::to_string(d_) + ":" + expansion_.str();
}

DyadicVector apply_word(const SliceSystem& s, const AddressWord& w, const DyadicVector& x) {
    if (x.dim() != s.dim()) throw std::invalid_argument("point dimension mismatch");
    s.check_word(w);
    const int n = w.length();
    if (x.exponent() + n > kMaxExponent)
        throw ResourceError("exponent overflow applying word of length " + std::to_string(n));
    const int m = s.dim();
    // T = sum_t b_{w_t} * 2^(n-t), so the result is (x + T/2^... ) = (x.num + T<<x.exp) / 2^(x.exp+n)
    std::vector<long long> t(static_cast<size_t>(m), 0);
    for (int i = 0; i < n; ++i) {
        const DyadicVector& b = s.vertices()[static_cast<size_t>(w.letters[static_cast<size_t>(i)] - 1)];
        for (int c = 0; c < m; ++c)
            t[static_cast<size_t>(c)] += b.numerators()[static_cast<size_t>(c)] << (n - 1 - i);
    }
    std::vector<long long> num(static_cast<size_t>(m));
    for (int c = 0; c < m; ++c)
        num[static_cast<size_t>(c)] =
            x.numerators()[static_cast<size_t>(c)] + (t[static_cast<size_t>(c)] << x.exponent());
    return DyadicVector(std::move(num), x.exponent() + n);
}

DyadicVector coding_point(const SliceSystem& s, const AddressWord& prefix, int tail_letter) {
    if (!s.letter_eventually_admissible(tail_letter, prefix.end_level()))
        throw std::domain_error("tail letter " + std::to_string(tail_letter) +
                                " not eventually admissible from level " + std::to_string(prefix.end_level()));
    // geometric tail: sum_{t>n} b/2^t = b/2^n, so the point is apply_word(prefix, b)
    return apply_word(s, prefix, s.vertices()[static_cast<size_t>(tail_letter - 1)]);
}

DyadicBox box_of_word(const SliceSystem& s, const AddressWord& w) {
    return DyadicBox{apply_word(s, w, DyadicVector::zero(s.dim())), w.length()};
}

std::vector<CoverEntry> cover(const SliceSystem& s, long long j, long long k, int pad) {
    if (j < 1 || k <= j) throw std::invalid_argument("need 1 <= j < k");
    if (pad < 0) throw std::invalid_argument("pad must be >= 0");
    const long long n = (k - j) + pad;
    if (n > s.max_word_length())
        throw ResourceError("cover depth " + std::to_string(n) + " exceeds word cap");

    std::vector<CoverEntry> out;
    AddressWord w{static_cast<int>(j), {}};
    // lexicographic depth-first enumeration
    auto rec = [&](auto&& self, long long level) -> void {
        if (level == j + n) {
            out.push_back({w, box_of_word(s, w)});
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

}  // namespace slices
