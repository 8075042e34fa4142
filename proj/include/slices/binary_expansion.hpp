#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slices {

using Bits = std::vector<std::uint8_t>;

// Eventually periodic binary expansion of a number in [0,1], kept in a unique
// canonical form:
//   * the period is primitive (not a power of a shorter word),
//   * the last preperiod bit differs from the last period bit,
//   * a dyadic rational other than 0 ends in 0(1), never in trailing zeros,
//   * 0 is "(0)" and 1 is "(1)".
//
// A prefix-only expansion (period empty) represents a number known only
// through finitely many digits; digit() past the prefix throws.
class BinaryExpansion {
public:
    static BinaryExpansion from_rational(long long num, long long den);
    static BinaryExpansion from_parts(Bits preperiod, Bits period);
    static BinaryExpansion from_digit_prefix(Bits digits);

    // Accepts "3/8", "0"/"1", "010(1)", or a bare 0/1 digit prefix like "0101".
    static BinaryExpansion parse(std::string_view text);

    const Bits& preperiod() const { return pre_; }
    const Bits& period() const { return per_; }
    bool prefix_only() const { return per_.empty(); }

    bool has_source() const { return source_.has_value(); }
    std::pair<long long, long long> source() const { return *source_; }

    // a_j for j >= 1.
    int digit(long long j) const;
    // number of digits queryable via digit(); LLONG_MAX unless prefix-only
    long long digits_available() const;
    // sum_{j<=n} a_j
    long long ones_count(long long n) const;

    std::string str() const;  // "010(1)", "(01)", prefix-only: "0101..."

    bool operator==(const BinaryExpansion& o) const {
        return pre_ == o.pre_ && per_ == o.per_;
    }

private:
    BinaryExpansion() = default;
    Bits pre_;
    Bits per_;
    std::optional<std::pair<long long, long long>> source_;
};

// Position of an expansion in the dichotomy driving the slice topology.
// For Dyadic the canonical form is a_1...a_n 0 (1); n is the prefix length
// and l counts the zeros among a_1..a_n. The expansions of 0 and 1 have no
// such prefix and get their own kinds; both behave like n = l = 0 in the
// component-count formulas.
struct ExpansionClass {
    enum class Kind { Zero, One, Dyadic, NonDyadic };
    Kind kind;
    long long n = 0;
    long long l = 0;

    bool dyadic_like() const { return kind != Kind::NonDyadic; }
};

ExpansionClass classify(const BinaryExpansion& e);

}  // namespace slices
