#include "slices/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace slices {

DyadicVector::DyadicVector(std::vector<long long> numerators, int exponent)
    : num_(std::move(numerators)), exp_(exponent) {
    if (exp_ < 0) throw std::invalid_argument("negative dyadic exponent");
    if (exp_ > kMaxExponent)
        throw ResourceError("dyadic exponent " + std::to_string(exp_) + " exceeds cap " +
                            std::to_string(kMaxExponent));
    for (long long n : num_)
        if (n < 0) throw std::invalid_argument("dyadic numerators must be nonnegative");
    while (exp_ > 0 && std::all_of(num_.begin(), num_.end(), [](long long n) { return (n & 1) == 0; })) {
        for (auto& n : num_) n >>= 1;
        --exp_;
    }
}

DyadicVector DyadicVector::zero(int dim) {
    return DyadicVector(std::vector<long long>(static_cast<size_t>(dim), 0), 0);
}

long long DyadicVector::numerator_at(int i, int e) const {
    if (e < exp_ || e > kMaxExponent) throw ResourceError("rescale exponent out of range");
    return num_[static_cast<size_t>(i)] << (e - exp_);
}

std::strong_ordering DyadicVector::operator<=>(const DyadicVector& o) const {
    if (auto c = dim() <=> o.dim(); c != 0) return c;
    const int e = std::max(exp_, o.exp_);
    for (int i = 0; i < dim(); ++i)
        if (auto c = numerator_at(i, e) <=> o.numerator_at(i, e); c != 0) return c;
    return std::strong_ordering::equal;
}

std::string DyadicVector::str() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
        if (i) s += ", ";
        s += std::to_string(num_[static_cast<size_t>(i)]);
        if (exp_ > 0) s += "/" + std::to_string(1LL << exp_);
    }
    return s + ")";
}

bool DyadicBox::contains(const DyadicVector& p) const {
    if (p.dim() != lower.dim()) throw std::invalid_argument("dimension mismatch");
    const int e = std::max({lower.exponent(), p.exponent(), side_exp});
    const long long side = 1LL << (e - side_exp);
    for (int i = 0; i < p.dim(); ++i) {
        const long long lo = lower.numerator_at(i, e), x = p.numerator_at(i, e);
        if (x < lo || x > lo + side) return false;
    }
    return true;
}

std::string DyadicBox::str() const {
    return lower.str() + " + [0,1/" + std::to_string(1LL << side_exp) + "]^" + std::to_string(lower.dim());
}

bool boxes_intersect(const DyadicBox& a, const DyadicBox& b) {
    const std::vector<const DyadicBox*> two{&a, &b};
    return boxes_commonly_intersect(two);
}

bool boxes_commonly_intersect(const std::vector<const DyadicBox*>& boxes) {
    if (boxes.empty()) return false;
    const int m = boxes[0]->lower.dim();
    int e = 0;
    for (auto* b : boxes) {
        if (b->lower.dim() != m) throw std::invalid_argument("dimension mismatch");
        e = std::max({e, b->lower.exponent(), b->side_exp});
    }
    for (int i = 0; i < m; ++i) {
        long long lo = 0, hi = 1LL << e;
        for (auto* b : boxes) {
            const long long l = b->lower.numerator_at(i, e);
            lo = std::max(lo, l);
            hi = std::min(hi, l + (1LL << (e - b->side_exp)));
        }
        if (lo > hi) return false;
    }
    return true;
}

}  // namespace slices
