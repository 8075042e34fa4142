#pragma once

#include <compare>
#include <string>
#include <vector>

#include "slices/errors.hpp"

namespace slices {

// All coordinates live in [0,1], so a numerator never exceeds 2^exponent.
// 62 keeps every intermediate (common-exponent compares, box uppers,
// center doubling) inside int64.
inline constexpr int kMaxExponent = 62;

// Exact point of [0,1]^m with coordinates num[i] / 2^exp, normalized so that
// exp == 0 or some numerator is odd.
class DyadicVector {
public:
    DyadicVector() = default;
    DyadicVector(std::vector<long long> numerators, int exponent);
    static DyadicVector zero(int dim);

    int dim() const { return static_cast<int>(num_.size()); }
    int exponent() const { return exp_; }
    const std::vector<long long>& numerators() const { return num_; }

    // numerator of coordinate i rescaled to exponent e >= exponent()
    long long numerator_at(int i, int e) const;

    std::strong_ordering operator<=>(const DyadicVector& o) const;
    bool operator==(const DyadicVector& o) const { return (*this <=> o) == 0; }

    std::string str() const;  // "(3/8, 1/2)"

private:
    std::vector<long long> num_;
    int exp_ = 0;
};

// Closed axis-aligned cube [lower, lower + 2^-side_exp]^m.
struct DyadicBox {
    DyadicVector lower;
    int side_exp = 0;

    bool contains(const DyadicVector& p) const;
    std::string str() const;
};

bool boxes_intersect(const DyadicBox& a, const DyadicBox& b);
// common point of all boxes (per-axis interval intersection)
bool boxes_commonly_intersect(const std::vector<const DyadicBox*>& boxes);

}  // namespace slices
