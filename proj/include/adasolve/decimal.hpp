#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace adasolve {

/// Exact base-10 number: mantissa * 10^-scale, kept normalized so equal values
/// have identical representations.
class Decimal {
public:
    using Int = boost::multiprecision::cpp_int;

    Decimal() = default;
    Decimal(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Decimal(Int mantissa, unsigned scale);

    /// Parses "-12.50", "3", ".5". No exponents, no separators.
    static std::optional<Decimal> parse(std::string_view text);
    /// Like parse() but throws std::invalid_argument.
    static Decimal from_string(std::string_view text);

    /// a / b rounded half away from zero to `places` fractional digits.
    static Decimal divide(const Decimal& a, const Decimal& b, unsigned places);

    [[nodiscard]] Decimal rounded(unsigned places) const;

    [[nodiscard]] const Int& mantissa() const { return mantissa_; }
    [[nodiscard]] unsigned scale() const { return scale_; }
    [[nodiscard]] bool is_zero() const { return mantissa_ == 0; }
    [[nodiscard]] bool is_negative() const { return mantissa_ < 0; }

    /// Shortest exact rendering ("3", "-0.25").
    [[nodiscard]] std::string to_string() const;
    /// Rendering with exactly `places` fractional digits, half-up rounding.
    [[nodiscard]] std::string to_fixed(unsigned places) const;
    [[nodiscard]] double to_double() const;

    friend Decimal operator+(const Decimal& a, const Decimal& b);
    friend Decimal operator-(const Decimal& a, const Decimal& b);
    friend Decimal operator*(const Decimal& a, const Decimal& b);
    Decimal operator-() const;
    Decimal& operator+=(const Decimal& other) { return *this = *this + other; }

    friend bool operator==(const Decimal& a, const Decimal& b) = default;
    friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

private:
    void normalize();

    Int mantissa_ = 0;
    unsigned scale_ = 0;
};

/// Non-negative fraction count/total, used for consistency ratios.
struct Ratio {
    std::int64_t count = 0;
    std::int64_t total = 1;

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] double to_double() const { return static_cast<double>(count) / static_cast<double>(total); }

    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);
    friend bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }
};

/// Exact comparison of a ratio against a terminating decimal.
std::strong_ordering compare(const Ratio& r, const Decimal& d);

}  // namespace adasolve
