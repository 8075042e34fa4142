#include "slices/binary_expansion.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace slices {

namespace {

bool all_of_bit(const Bits& b, std::uint8_t v) {
    return std::all_of(b.begin(), b.end(), [v](std::uint8_t x) { return x == v; });
}

void check_bits(const Bits& b) {
    for (auto x : b)
        if (x > 1) throw std::invalid_argument("expansion digits must be 0 or 1");
}

// smallest w with period == w repeated
Bits primitive_root(const Bits& period) {
    const size_t n = period.size();
    for (size_t len = 1; len <= n; ++len) {
        if (n % len != 0) continue;
        bool ok = true;
        for (size_t i = len; i < n && ok; ++i) ok = period[i] == period[i - len];
        if (ok) return Bits(period.begin(), period.begin() + static_cast<long>(len));
    }
    return period;
}

}  // namespace

BinaryExpansion BinaryExpansion::from_parts(Bits preperiod, Bits period) {
    check_bits(preperiod);
    check_bits(period);
    if (period.empty()) throw std::invalid_argument("period must be nonempty; use from_digit_prefix for prefixes");

    // A terminating expansion (all-zero period) is rewritten into the
    // trailing-ones form unless the value is 0.
    if (all_of_bit(period, 0)) {
        if (all_of_bit(preperiod, 0)) {
            BinaryExpansion e;
            e.per_ = {0};
            return e;
        }
        while (!preperiod.empty() && preperiod.back() == 0) preperiod.pop_back();
        preperiod.back() = 0;  // flip the last 1
        period = {1};
    }

    period = primitive_root(period);

    // Absorb: rotating the period right while the last preperiod bit matches
    // its last bit yields the minimal preperiod.
    while (!preperiod.empty() && preperiod.back() == period.back()) {
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
        preperiod.pop_back();
    }

    BinaryExpansion e;
    e.pre_ = std::move(preperiod);
    e.per_ = std::move(period);
    return e;
}

BinaryExpansion BinaryExpansion::from_digit_prefix(Bits digits) {
    check_bits(digits);
    if (digits.empty()) throw std::invalid_argument("digit prefix must be nonempty");
    BinaryExpansion e;
    e.pre_ = std::move(digits);
    return e;
}

BinaryExpansion BinaryExpansion::from_rational(long long num, long long den) {
    if (den < 1) throw std::domain_error("denominator must be positive");
    if (num < 0 || num > den) throw std::domain_error("value must lie in [0,1]");
    if (den > (1LL << 62) - 1) throw std::domain_error("denominator too large");
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;

    Bits digits;
    std::unordered_map<long long, size_t> seen;
    long long r = num;
    BinaryExpansion e;
    for (;;) {
        if (r == 0) {
            // terminating: digits then zeros forever
            e = from_parts(std::move(digits), {0});
            break;
        }
        auto [it, fresh] = seen.try_emplace(r, digits.size());
        if (!fresh) {
            Bits pre(digits.begin(), digits.begin() + static_cast<long>(it->second));
            Bits per(digits.begin() + static_cast<long>(it->second), digits.end());
            e = from_parts(std::move(pre), std::move(per));
            break;
        }
        r <<= 1;
        std::uint8_t d = r >= den;
        if (d) r -= den;
        digits.push_back(d);
    }
    e.source_ = {num, den};
    return e;
}

BinaryExpansion BinaryExpansion::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty expansion text");
    if (text.find('/') != std::string_view::npos) {
        const size_t slash = text.find('/');
        const std::string n(text.substr(0, slash)), d(text.substr(slash + 1));
        size_t pn = 0, pd = 0;
        const long long num = std::stoll(n, &pn), den = std::stoll(d, &pd);
        if (pn != n.size() || pd != d.size()) throw std::invalid_argument("bad rational: " + std::string(text));
        return from_rational(num, den);
    }
    if (text.find('(') != std::string_view::npos) {
        const size_t open = text.find('('), close = text.find(')');
        if (close != text.size() - 1 || close < open)
            throw std::invalid_argument("bad expansion text: " + std::string(text));
        auto to_bits = [](std::string_view s) {
            Bits b;
            for (char c : s) {
                if (c != '0' && c != '1') throw std::invalid_argument("expansion digits must be 0 or 1");
                b.push_back(static_cast<std::uint8_t>(c - '0'));
            }
            return b;
        };
        return from_parts(to_bits(text.substr(0, open)), to_bits(text.substr(open + 1, close - open - 1)));
    }
    const bool binary = std::all_of(text.begin(), text.end(), [](char c) { return c == '0' || c == '1'; });
    if (binary && text.size() > 1) {
        Bits b;
        for (char c : text) b.push_back(static_cast<std::uint8_t>(c - '0'));
        return from_digit_prefix(std::move(b));
    }
    // plain integer, necessarily 0 or 1 for a value in [0,1]
    size_t pos = 0;
    const long long v = std::stoll(std::string(text), &pos);
    if (pos != text.size()) throw std::invalid_argument("bad value: " + std::string(text));
    return from_rational(v, 1);
}

int BinaryExpansion::digit(long long j) const {
    if (j < 1) throw std::domain_error("digit index must be >= 1");
    const long long p = static_cast<long long>(pre_.size());
    if (j <= p) return pre_[static_cast<size_t>(j - 1)];
    if (per_.empty())
        throw std::domain_error("digit " + std::to_string(j) + " lies beyond the supplied prefix of length " +
                                std::to_string(p));
    return per_[static_cast<size_t>((j - 1 - p) % static_cast<long long>(per_.size()))];
}

long long BinaryExpansion::digits_available() const {
    return per_.empty() ? static_cast<long long>(pre_.size()) : LLONG_MAX;
}

long long BinaryExpansion::ones_count(long long n) const {
    if (n < 0) throw std::domain_error("ones_count needs n >= 0");
    if (n > digits_available()) throw std::domain_error("ones_count beyond the supplied prefix");
    long long total = 0;
    const long long p = static_cast<long long>(pre_.size());
    const long long in_pre = std::min(n, p);
    for (long long j = 0; j < in_pre; ++j) total += pre_[static_cast<size_t>(j)];
    if (n <= p) return total;
    const long long L = static_cast<long long>(per_.size());
    const long long ones_per_period = std::accumulate(per_.begin(), per_.end(), 0LL);
    const long long tail = n - p;
    total += (tail / L) * ones_per_period;
    for (long long j = 0; j < tail % L; ++j) total += per_[static_cast<size_t>(j)];
    return total;
}

std::string BinaryExpansion::str() const {
    std::string s;
    for (auto b : pre_) s += static_cast<char>('0' + b);
    if (per_.empty()) {
        s += "...";
        return s;
    }
    s += '(';
    for (auto b : per_) s += static_cast<char>('0' + b);
    s += ')';
    return s;
}

ExpansionClass classify(const BinaryExpansion& e) {
    if (e.prefix_only()) throw std::domain_error("cannot classify a prefix-only expansion");
    const Bits& per = e.period();
    if (per == Bits{0}) return {ExpansionClass::Kind::Zero, 0, 0};
    if (per != Bits{1}) return {ExpansionClass::Kind::NonDyadic, 0, 0};
    if (e.preperiod().empty()) return {ExpansionClass::Kind::One, 0, 0};
    // canonical form a_1...a_n 0 (1); minimality forces the preperiod to end in 0
    const long long n = static_cast<long long>(e.preperiod().size()) - 1;
    long long zeros = 0;
    for (long long j = 0; j < n; ++j) zeros += e.preperiod()[static_cast<size_t>(j)] == 0;
    return {ExpansionClass::Kind::Dyadic, n, zeros};
}

}  // namespace slices
