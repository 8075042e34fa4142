#pragma once

#include <atomic>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "slices/geometry.hpp"

namespace slices {

// Eventually constant address: prefix then tail_letter repeated forever.
struct PieceAddress {
    AddressWord prefix;
    int tail_letter = 1;
    std::string str() const { return prefix.str() + "." + std::to_string(tail_letter) + "~"; }
};

// Exact verdict on whether finitely many pieces share a point.
//   Disjoint  — the depth-`depth` box covers of the pieces have no common
//               point, which certifies empty intersection.
//   Intersect — `witness` lies in every piece; `addresses` gives one exact
//               coding address per piece, each extending that piece's word.
//   Undecided — neither certificate was found up to depth `depth`.
struct IntersectionVerdict {
    enum class Kind { Disjoint, Intersect, Undecided };
    Kind kind = Kind::Undecided;
    int depth = 0;
    DyadicVector witness;
    std::vector<PieceAddress> addresses;

    bool intersect() const { return kind == Kind::Intersect; }
    bool disjoint() const { return kind == Kind::Disjoint; }
    bool undecided() const { return kind == Kind::Undecided; }
    std::string str() const;
};

// Verdict memo; safe for concurrent readers with serialized insertion.
class OracleCache {
public:
    std::optional<IntersectionVerdict> lookup(const std::string& key) const;
    void store(const std::string& key, const IntersectionVerdict& v);
    size_t size() const;
    long long hits() const { return hits_.load(); }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, IntersectionVerdict> map_;
    mutable std::atomic<long long> hits_{0};
};

// Decides whether the pieces addressed by equal-length words at a common
// start level share a point. Intersect certificates come from common coding
// points with eventually constant tails; Disjoint certificates from padded
// cover separation. Both are exact.
IntersectionVerdict pieces_intersect(const SliceSystem& s, const std::vector<AddressWord>& words,
                                     int t_max, OracleCache* cache = nullptr);

struct MembershipResult {
    enum class Kind { Yes, No, Undecided };
    Kind kind = Kind::Undecided;
    int depth = 0;
    PieceAddress address;  // Yes only
};

// Is p a point of the piece of w (a word ending at level k)?
MembershipResult point_in_piece(const SliceSystem& s, const DyadicVector& p, const AddressWord& w,
                                long long k, int t_max);

// Brute-force cross-check: do the depth-pad box covers of all pieces share a
// point? Over-approximates piece intersection: false certifies Disjoint.
bool pixel_oracle(const SliceSystem& s, const std::vector<AddressWord>& words, int pad);

}  // namespace slices
