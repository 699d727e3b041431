#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "dtcalc/errors.hpp"

namespace dtcalc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact element of the Gaussian rationals: re + im*i with arbitrary-precision
/// rational parts. All field operations are exact; division by zero throws.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}
    Scalar(Rational re) : re_(std::move(re)) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    /// re^2 + im^2 (field norm down to the rationals).
    Rational norm() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero())
            throw DomainError(ErrorCode::DivisionByZero, "scalar division by zero");
        Rational n = o.norm();
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const {
        Scalar one(1);
        return one / *this;
    }

    Scalar pow(unsigned long e) const {
        Scalar base = *this, acc(1);
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Canonical string: "0", "3/2", "-1/2", "i", "-i", "2i", "1-2i", "1/2+3/4i".
    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.to_string();
    }

private:
    Rational re_ = 0;
    Rational im_ = 0;
};

inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

inline std::string Scalar::to_string() const {
    if (im_ == 0) return rational_to_string(re_);
    std::string out;
    if (re_ != 0) {
        out = rational_to_string(re_);
        out += (im_ > 0) ? "+" : "-";
    } else if (im_ < 0) {
        out = "-";
    }
    Rational a = abs(im_);
    if (a != 1) out += rational_to_string(a);
    out += "i";
    return out;
}

/// Exact square root of a nonnegative rational, if one exists.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Integer n = numerator(r), d = denominator(r);
    Integer sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

/// The two square roots of z in Q(i) when they exist (first entry is the
/// canonical choice: positive real part, or zero real part and positive
/// imaginary part).
inline std::optional<std::pair<Scalar, Scalar>> sqrt_in_field(const Scalar& z) {
    auto canonical_pair = [](const Scalar& w) {
        Scalar pos = w;
        if (pos.re() < 0 || (pos.re() == 0 && pos.im() < 0)) pos = -pos;
        return std::make_pair(pos, -pos);
    };
    if (z.is_zero()) return std::make_pair(Scalar(0), Scalar(0));
    if (z.is_rational()) {
        if (z.re() > 0) {
            auto c = rational_sqrt(z.re());
            if (!c) return std::nullopt;
            return canonical_pair(Scalar(*c));
        }
        auto d = rational_sqrt(-z.re());
        if (!d) return std::nullopt;
        return canonical_pair(Scalar(Rational(0), *d));
    }
    // c^2 = (a + sqrt(a^2+b^2))/2, d = b / (2c)
    auto r = rational_sqrt(z.norm());
    if (!r) return std::nullopt;
    auto c2 = Rational((z.re() + *r) / 2);
    auto c = rational_sqrt(c2);
    if (!c || *c == 0) return std::nullopt;
    Rational d = z.im() / (2 * (*c));
    Scalar w(*c, d);
    if (w * w != z) return std::nullopt;
    return canonical_pair(w);
}

/// Canonical square root when it exists in the field.
inline std::optional<Scalar> canonical_sqrt(const Scalar& z) {
    auto p = sqrt_in_field(z);
    if (!p) return std::nullopt;
    return p->first;
}

namespace detail {

// Shared rational-literal scanner: digits ['/' digits].
inline Rational scan_rational(const std::string& s, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("expected a digit", start);
    Integer num(s.substr(start, pos - start));
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::size_t dstart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == dstart) throw ParseError("expected a denominator", dstart);
        Integer den(s.substr(dstart, pos - dstart));
        if (den == 0) throw ParseError("zero denominator", dstart);
        return Rational(num, den);
    }
    return Rational(num);
}

} // namespace detail

/// Parses the canonical scalar string format produced by Scalar::to_string.
/// Accepted forms: "p/q", "i", "-i", "2i", "p/qi", "a+bi", "a-bi" (no spaces).
inline Scalar parse_scalar(const std::string& s) {
    std::size_t pos = 0;
    if (s.empty()) throw ParseError("empty scalar", 0);

    auto parse_part = [&](bool& was_imaginary) -> Rational {
        bool neg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            neg = (s[pos] == '-');
            ++pos;
        }
        Rational mag;
        if (pos < s.size() && s[pos] == 'i') {
            ++pos;
            was_imaginary = true;
            mag = 1;
        } else {
            mag = detail::scan_rational(s, pos);
            if (pos < s.size() && s[pos] == 'i') {
                ++pos;
                was_imaginary = true;
            } else {
                was_imaginary = false;
            }
        }
        return neg ? Rational(-mag) : mag;
    };

    bool imag1 = false;
    Rational first = parse_part(imag1);
    if (pos == s.size()) {
        return imag1 ? Scalar(Rational(0), first) : Scalar(first);
    }
    if (imag1) throw ParseError("imaginary part must come last", pos);
    bool imag2 = false;
    Rational second = parse_part(imag2);
    if (!imag2) throw ParseError("expected imaginary part", pos);
    if (pos != s.size()) throw ParseError("trailing characters in scalar", pos);
    return Scalar(first, second);
}

} // namespace dtcalc
