#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "barcodes/errors.hpp"

namespace barcodes {

/// Exact arbitrary-precision rational; always kept in lowest terms.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Formats as `p/q`, or `p` when the denominator is one.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses an integer, a fraction `p/q`, or a plain decimal such as `-0.125`
/// (optionally with an `e` exponent). Decimals are converted exactly.
inline std::optional<Rational> try_parse_rational(std::string_view text)
{
    if (text.empty()) return std::nullopt;
    std::string s(text);
    auto is_digits = [](std::string_view v) {
        if (v.empty()) return false;
        for (char c : v)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto strip_sign = [](std::string_view v, bool& neg) {
        neg = false;
        if (!v.empty() && (v.front() == '-' || v.front() == '+')) {
            neg = v.front() == '-';
            v.remove_prefix(1);
        }
        return v;
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        bool neg = false;
        std::string_view num = strip_sign(std::string_view(s).substr(0, slash), neg);
        std::string_view den = std::string_view(s).substr(slash + 1);
        if (!is_digits(num) || !is_digits(den)) return std::nullopt;
        mpz_class n{std::string(num), 10}, d{std::string(den), 10};
        if (d == 0) return std::nullopt;
        Rational q(neg ? mpz_class(-n) : n, d);
        q.canonicalize();
        return q;
    }

    bool neg = false;
    std::string_view body = strip_sign(s, neg);
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = body.substr(e + 1);
        bool exp_neg = false;
        exp_part = strip_sign(exp_part, exp_neg);
        if (!is_digits(exp_part) || exp_part.size() > 6) return std::nullopt;
        exponent = std::stol(std::string(exp_part)) * (exp_neg ? -1 : 1);
        body = body.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !is_digits(ip)) ||
            (!fp.empty() && !is_digits(fp)))
            return std::nullopt;
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    } else {
        if (!is_digits(body)) return std::nullopt;
        digits = std::string(body);
    }
    if (digits.empty()) digits = "0";
    mpz_class n(digits, 10);
    long scale = exponent - frac_len;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale < 0 ? Rational(n, p10) : Rational(n * p10);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

inline Rational parse_rational(std::string_view text, std::size_t line = 0)
{
    auto q = try_parse_rational(text);
    if (!q) throw FormatError("not a rational number: '" + std::string(text) + "'", line);
    return *q;
}

/// A rational extended by -inf and +inf. Used for bar endpoints and for
/// distances, which may be infinite.
class Extended {
public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    Extended() = default;
    Extended(const Rational& q) : kind_(Kind::Finite), value_(q) {}  // NOLINT: implicit by intent
    Extended(long v) : kind_(Kind::Finite), value_(v) {}             // NOLINT
    // gmpxx arithmetic yields expression templates; accept them directly
    template <typename T, typename U>
    Extended(const __gmp_expr<T, U>& e) : kind_(Kind::Finite), value_(e) {}  // NOLINT

    static Extended pos_inf() { return Extended(Kind::PosInf); }
    static Extended neg_inf() { return Extended(Kind::NegInf); }

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

    /// Precondition: is_finite().
    const Rational& value() const
    {
        if (!is_finite()) throw std::logic_error("Extended::value on an infinite value");
        return value_;
    }

    friend bool operator==(const Extended& a, const Extended& b)
    {
        if (a.kind_ != b.kind_) return false;
        return !a.is_finite() || a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const Extended& a, const Extended& b)
    {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
        if (!a.is_finite()) return std::strong_ordering::equal;
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Translation by a finite amount; infinities are fixed points.
    friend Extended operator+(const Extended& a, const Rational& c)
    {
        return a.is_finite() ? Extended(a.value_ + c) : a;
    }
    friend Extended operator-(const Extended& a, const Rational& c)
    {
        return a.is_finite() ? Extended(a.value_ - c) : a;
    }

    std::string str() const
    {
        switch (kind_) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "inf";
        default: return to_string(value_);
        }
    }

    double to_double() const
    {
        switch (kind_) {
        case Kind::NegInf: return -std::numeric_limits<double>::infinity();
        case Kind::PosInf: return std::numeric_limits<double>::infinity();
        default: return value_.get_d();
        }
    }

private:
    explicit Extended(Kind k) : kind_(k) {}

    Kind kind_ = Kind::Finite;
    Rational value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.str(); }

/// Accepts `inf`, `+inf`, `-inf` (and `infinity`) besides the rational forms.
inline Extended parse_extended(std::string_view text, std::size_t line = 0)
{
    if (text == "inf" || text == "+inf" || text == "infinity" || text == "+infinity")
        return Extended::pos_inf();
    if (text == "-inf" || text == "-infinity") return Extended::neg_inf();
    return Extended(parse_rational(text, line));
}

/// |a - b| with the convention that equal infinities are at distance zero and
/// anything else involving an infinity is at distance +inf.
inline Extended endpoint_deviation(const Extended& a, const Extended& b)
{
    if (a.is_finite() && b.is_finite()) return Extended(abs(a.value() - b.value()));
    if (a.kind() == b.kind()) return Extended(Rational(0));
    return Extended::pos_inf();
}

} // namespace barcodes
