#include "adasolve/decimal.hpp"

#include <cctype>
#include <stdexcept>

namespace adasolve {

namespace {

Decimal::Int pow10(unsigned n) {
    Decimal::Int r = 1;
    for (unsigned i = 0; i < n; ++i) r *= 10;
    return r;
}

// Aligns both mantissas to the larger scale.
std::pair<Decimal::Int, Decimal::Int> align(const Decimal& a, const Decimal& b, unsigned& scale) {
    scale = std::max(a.scale(), b.scale());
    return {a.mantissa() * pow10(scale - a.scale()), b.mantissa() * pow10(scale - b.scale())};
}

// Integer division rounding half away from zero.
Decimal::Int div_round(const Decimal::Int& num, const Decimal::Int& den) {
    Decimal::Int q = num / den;
    Decimal::Int r = num % den;
    Decimal::Int twice = abs(r) * 2;
    if (twice >= abs(den)) {
        q += ((num < 0) != (den < 0)) ? -1 : 1;
    }
    return q;
}

}  // namespace

Decimal::Decimal(std::int64_t value) : mantissa_(value) {}

Decimal::Decimal(Int mantissa, unsigned scale) : mantissa_(std::move(mantissa)), scale_(scale) { normalize(); }

void Decimal::normalize() {
    if (mantissa_ == 0) {
        scale_ = 0;
        return;
    }
    while (scale_ > 0 && mantissa_ % 10 == 0) {
        mantissa_ /= 10;
        --scale_;
    }
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    Int mantissa = 0;
    unsigned scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_point) ++scale;
            seen_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit) return std::nullopt;
    if (negative) mantissa = -mantissa;
    return Decimal(std::move(mantissa), scale);
}

Decimal Decimal::from_string(std::string_view text) {
    auto d = parse(text);
    if (!d) throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    return *d;
}

Decimal Decimal::divide(const Decimal& a, const Decimal& b, unsigned places) {
    if (b.is_zero()) throw std::domain_error("decimal division by zero");
    // a/b = (ma / 10^sa) / (mb / 10^sb); scale the numerator so the quotient has `places` digits.
    Int num = a.mantissa_ * pow10(places + b.scale_);
    Int den = b.mantissa_ * pow10(a.scale_);
    return Decimal(div_round(num, den), places);
}

Decimal Decimal::rounded(unsigned places) const {
    if (scale_ <= places) return *this;
    return Decimal(div_round(mantissa_, pow10(scale_ - places)), places);
}

std::string Decimal::to_string() const {
    std::string digits = Int(abs(mantissa_)).str();
    if (scale_ > 0) {
        if (digits.size() <= scale_) digits.insert(0, scale_ - digits.size() + 1, '0');
        digits.insert(digits.size() - scale_, 1, '.');
    }
    return mantissa_ < 0 ? "-" + digits : digits;
}

std::string Decimal::to_fixed(unsigned places) const {
    const Decimal r = rounded(places);
    Int m = r.mantissa_ * pow10(places - r.scale_);
    std::string digits = Int(abs(m)).str();
    if (places > 0) {
        if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
        digits.insert(digits.size() - places, 1, '.');
    }
    return m < 0 ? "-" + digits : digits;
}

double Decimal::to_double() const { return std::stod(to_string()); }

Decimal operator+(const Decimal& a, const Decimal& b) {
    unsigned scale = 0;
    auto [x, y] = align(a, b, scale);
    return Decimal(x + y, scale);
}

Decimal operator-(const Decimal& a, const Decimal& b) {
    unsigned scale = 0;
    auto [x, y] = align(a, b, scale);
    return Decimal(x - y, scale);
}

Decimal operator*(const Decimal& a, const Decimal& b) {
    return Decimal(a.mantissa_ * b.mantissa_, a.scale_ + b.scale_);
}

Decimal Decimal::operator-() const { return Decimal(-mantissa_, scale_); }

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    unsigned scale = 0;
    auto [x, y] = align(a, b, scale);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Ratio::to_string() const { return std::to_string(count) + "/" + std::to_string(total); }

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    // Cross-multiplication; counts are sample counts so no overflow concern.
    return a.count * b.total <=> b.count * a.total;
}

std::strong_ordering compare(const Ratio& r, const Decimal& d) {
    const Decimal::Int lhs = Decimal::Int(r.count) * [&] {
        Decimal::Int p = 1;
        for (unsigned i = 0; i < d.scale(); ++i) p *= 10;
        return p;
    }();
    const Decimal::Int rhs = d.mantissa() * r.total;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace adasolve
