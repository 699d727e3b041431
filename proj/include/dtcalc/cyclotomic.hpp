#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "dtcalc/errors.hpp"
#include "dtcalc/scalar.hpp"

namespace dtcalc {

/// Dense univariate polynomial over Q, used for number-field arithmetic.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit QPoly(Rational c) : c_{std::move(c)} { trim(); }

    static QPoly x_power(std::size_t k) {
        std::vector<Rational> c(k + 1, Rational(0));
        c[k] = 1;
        return QPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) + b.coeff(k);
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) - b.coeff(k);
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return QPoly(std::move(r));
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    /// Quotient and remainder of exact division by a nonzero polynomial.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero())
            throw DomainError(ErrorCode::DivisionByZero, "polynomial division by zero");
        QPoly rem = *this;
        std::vector<Rational> q;
        long dq = degree() - d.degree();
        if (dq < 0) return {QPoly(), rem};
        q.assign(static_cast<std::size_t>(dq) + 1, Rational(0));
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            Rational f = rem.lead() / d.lead();
            std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
            q[shift] = f;
            for (std::size_t k = 0; k < d.c_.size(); ++k)
                rem.c_[shift + k] -= f * d.c_[k];
            rem.trim();
        }
        return {QPoly(std::move(q)), rem};
    }

    QPoly monic() const {
        if (is_zero()) return *this;
        QPoly r = *this;
        Rational l = lead();
        for (auto& c : r.c_) c /= l;
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Monic gcd over Q.
inline QPoly qpoly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<QPoly, QPoly, QPoly> qpoly_xgcd(QPoly a, QPoly b) {
    QPoly s0(Rational(1)), s1, t0, t1(Rational(1));
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        QPoly s2 = s0 - q * s1;
        QPoly t2 = t0 - q * t1;
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.is_zero()) return {a, s0, t0};
    Rational l = a.lead();
    QPoly linv(Rational(1) / l);
    return {a.monic(), linv * s0, linv * t0};
}

/// m-th cyclotomic polynomial over Z (computed recursively, cached).
inline const QPoly& cyclotomic_polynomial(unsigned m) {
    static std::map<unsigned, QPoly> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // x^m - 1 divided by the product of Phi_d for proper divisors d.
    std::vector<Rational> xm(m + 1, Rational(0));
    xm[0] = -1;
    xm[m] = 1;
    QPoly num{std::move(xm)};
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        auto [q, r] = num.divmod(cyclotomic_polynomial(d));
        if (!r.is_zero())
            throw DomainError(ErrorCode::NotExact, "cyclotomic division left a remainder");
        num = std::move(q);
    }
    return cache.emplace(m, std::move(num)).first->second;
}

class CycloField;
using CycloFieldPtr = std::shared_ptr<const CycloField>;

/// Q(zeta_m) presented as Q[x]/Phi_m(x).
class CycloField {
public:
    explicit CycloField(unsigned m) : m_(m), modulus_(cyclotomic_polynomial(m)) {
        if (m == 0) throw DomainError(ErrorCode::InvalidArgument, "order must be positive");
    }

    unsigned order() const { return m_; }
    const QPoly& modulus() const { return modulus_; }
    std::size_t degree() const { return static_cast<std::size_t>(modulus_.degree()); }

    QPoly reduce(const QPoly& p) const { return p.divmod(modulus_).second; }

private:
    unsigned m_;
    QPoly modulus_;
};

/// Element of a cyclotomic field. Default- and int-constructed elements are
/// rational constants of an unspecified field and combine with any element.
class CycloElem {
public:
    CycloElem() = default;
    CycloElem(int v) : rep_(Rational(v)) {}
    CycloElem(CycloFieldPtr fld, QPoly rep) : fld_(std::move(fld)), rep_(fld_->reduce(rep)) {}

    static CycloElem from_rational(const CycloFieldPtr& fld, const Rational& r) {
        return CycloElem(fld, QPoly(r));
    }

    /// zeta_m^k for the field's primitive root.
    static CycloElem zeta_power(const CycloFieldPtr& fld, long k) {
        long m = static_cast<long>(fld->order());
        long e = ((k % m) + m) % m;
        QPoly p = QPoly::x_power(static_cast<std::size_t>(e));
        return CycloElem(fld, std::move(p));
    }

    bool is_zero() const { return rep_.is_zero(); }
    const QPoly& rep() const { return rep_; }
    const CycloFieldPtr& field() const { return fld_; }

    friend CycloElem operator+(const CycloElem& a, const CycloElem& b) {
        return make(a.fld_ ? a.fld_ : b.fld_, a.rep_ + b.rep_);
    }
    friend CycloElem operator-(const CycloElem& a, const CycloElem& b) {
        return make(a.fld_ ? a.fld_ : b.fld_, a.rep_ - b.rep_);
    }
    friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
        if (a.is_zero() || b.is_zero()) return CycloElem();
        return make(a.fld_ ? a.fld_ : b.fld_, a.rep_ * b.rep_);
    }
    friend CycloElem operator/(const CycloElem& a, const CycloElem& b) {
        if (b.is_zero())
            throw DomainError(ErrorCode::DivisionByZero, "division by zero field element");
        if (!b.fld_) {
            // Rational constant divisor.
            CycloElem inv;
            inv.rep_ = QPoly(Rational(1) / b.rep_.coeff(0));
            return a * inv;
        }
        auto [g, s, t] = qpoly_xgcd(b.rep_, b.fld_->modulus());
        if (g.degree() != 0)
            throw DomainError(ErrorCode::NotExact, "modulus is not coprime to the element");
        (void)t;
        return a * CycloElem(b.fld_, s);
    }

    friend bool operator==(const CycloElem& a, const CycloElem& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        return a.rep_ == b.rep_;
    }
    friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

private:
    static CycloElem make(const CycloFieldPtr& fld, QPoly rep) {
        CycloElem e;
        e.fld_ = fld;
        e.rep_ = fld ? fld->reduce(rep) : std::move(rep);
        return e;
    }

    CycloFieldPtr fld_;
    QPoly rep_;
};

/// Embedding of Q(i) into Q(zeta_m); requires 4 | m.
inline CycloElem embed_scalar(const CycloFieldPtr& fld, const Scalar& s) {
    if (fld->order() % 4 != 0)
        throw DomainError(ErrorCode::InvalidArgument, "field does not contain i (need 4 | m)");
    CycloElem re = CycloElem::from_rational(fld, s.re());
    CycloElem im = CycloElem::from_rational(fld, s.im());
    CycloElem i = CycloElem::zeta_power(fld, static_cast<long>(fld->order() / 4));
    return re + im * i;
}

} // namespace dtcalc
