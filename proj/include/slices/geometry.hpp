#pragma once

#include <string>
#include <vector>

#include "slices/binary_expansion.hpp"
#include "slices/dyadic.hpp"

namespace slices {

inline constexpr int kDefaultMaxWordLength = 56;

// Projected vertex offsets b_1..b_d of the dimension-d gasket family:
// b_i lives in R^(d-1) and has exactly i-1 trailing ones.
std::vector<DyadicVector> vertex_set(int d);

// Word of letters addressed to consecutive levels start_level.. of a slice
// system; letter t acts at level start_level + t - 1.
struct AddressWord {
    int start_level = 1;
    std::vector<int> letters;

    int length() const { return static_cast<int>(letters.size()); }
    int end_level() const { return start_level + length(); }
    AddressWord extended(int letter) const;
    AddressWord truncated() const;  // drop the last letter

    std::strong_ordering operator<=>(const AddressWord&) const = default;
    std::string str() const;  // "1.3.2@1"
};

// Level-dependent alphabet system of a slice of the dimension-d gasket:
// level j admits only the contraction toward the origin when a_j = 0 and all
// d contractions when a_j = 1.
class SliceSystem {
public:
    SliceSystem(BinaryExpansion expansion, int ambient_dim,
                int max_word_length = kDefaultMaxWordLength);

    int ambient_dim() const { return d_; }
    int dim() const { return d_ - 1; }
    const BinaryExpansion& expansion() const { return expansion_; }
    const std::vector<DyadicVector>& vertices() const { return vertices_; }
    int max_word_length() const { return max_word_length_; }

    bool level_available(long long level) const;
    bool full_alphabet(long long level) const;  // digit a_level == 1
    int alphabet_size(long long level) const;
    std::vector<int> alphabet(long long level) const;
    bool letter_admissible(int letter, long long level) const;
    // letter belongs to every alphabet from from_level on
    bool letter_eventually_admissible(int letter, long long from_level) const;

    void check_word(const AddressWord& w) const;
    std::string fingerprint() const;

private:
    int d_;
    BinaryExpansion expansion_;
    std::vector<DyadicVector> vertices_;
    int max_word_length_;
};

SliceSystem build_slice_system(BinaryExpansion e, int ambient_dim,
                               int max_word_length = kDefaultMaxWordLength);

// Exact image of x under the composed contraction of w: x/2^n + sum b/2^t.
DyadicVector apply_word(const SliceSystem& s, const AddressWord& w, const DyadicVector& x);

// Point whose address is `prefix` followed by tail_letter forever. The tail
// must belong to every alphabet past the prefix.
DyadicVector coding_point(const SliceSystem& s, const AddressWord& prefix, int tail_letter);

DyadicBox box_of_word(const SliceSystem& s, const AddressWord& w);

struct CoverEntry {
    AddressWord word;
    DyadicBox box;
};

// Depth-((k-j)+pad) cover of the level-j limit set, in lexicographic word order.
std::vector<CoverEntry> cover(const SliceSystem& s, long long j, long long k, int pad);

}  // namespace slices
