#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dtcalc/errors.hpp"
#include "dtcalc/scalar.hpp"

namespace dtcalc {

using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t monomial_degree(const Monomial& m) {
    std::uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

/// Graded-lexicographic order: compare total degree first, then exponents
/// left to right.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::uint64_t da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

inline bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial monomial_quotient(const Monomial& b, const Monomial& a) {
    Monomial q(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
    return q;
}

/// Multivariate polynomial over Q(i) in canonical expanded form. Exponent
/// vectors always have the same length as the variable list and zero
/// coefficients are never stored.
class Poly {
public:
    using TermMap = std::map<Monomial, Scalar, GrlexLess>;

    Poly() = default;
    explicit Poly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

    static Poly constant(const Scalar& c, std::vector<std::string> variables = {}) {
        Poly p(std::move(variables));
        if (!c.is_zero()) p.terms_[Monomial(p.vars_.size(), 0)] = c;
        return p;
    }

    static Poly variable(const std::string& name, const std::vector<std::string>& variables) {
        Poly p(variables);
        auto it = std::find(variables.begin(), variables.end(), name);
        if (it == variables.end())
            throw DomainError(ErrorCode::InvalidArgument, "unknown variable " + name);
        Monomial m(variables.size(), 0);
        m[static_cast<std::size_t>(it - variables.begin())] = 1;
        p.terms_[m] = Scalar(1);
        return p;
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t var_count() const { return vars_.size(); }

    std::uint64_t total_degree() const {
        return terms_.empty() ? 0 : monomial_degree(terms_.rbegin()->first);
    }

    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    Scalar constant_term() const { return coefficient(Monomial(vars_.size(), 0)); }

    void add_term(const Monomial& m, const Scalar& c) {
        if (m.size() != vars_.size())
            throw DomainError(ErrorCode::InvalidArgument, "exponent vector length mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(vars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.require_same_vars(b);
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.require_same_vars(b);
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same_vars(b);
        Poly r(a.vars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < ma.size(); ++i) {
                    std::uint64_t e = std::uint64_t(ma[i]) + std::uint64_t(mb[i]);
                    if (e > 0x7fffffffull)
                        throw DomainError(ErrorCode::ExponentOverflow,
                                          "exponent exceeds 2^31-1 in product");
                    m[i] = static_cast<std::uint32_t>(e);
                }
                r.add_term(m, ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Scalar& s, const Poly& p) {
        Poly r(p.vars_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : p.terms_) r.terms_[m] = s * c;
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(std::uint64_t e) const {
        Poly acc = constant(Scalar(1), vars_);
        Poly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    /// Exact partial derivative with respect to the idx-th variable.
    Poly derivative(std::size_t idx) const {
        Poly r(vars_);
        for (const auto& [m, c] : terms_) {
            if (m[idx] == 0) continue;
            Monomial d = m;
            d[idx] -= 1;
            r.add_term(d, Scalar(Rational(m[idx])) * c);
        }
        return r;
    }

    /// Substitutes args[i] for the i-th variable; all args must share a common
    /// variable list, which becomes the variable list of the result.
    Poly substitute(const std::vector<Poly>& args) const {
        if (args.size() != vars_.size())
            throw DomainError(ErrorCode::InvalidArgument, "substitution arity mismatch");
        std::vector<std::string> target_vars =
            args.empty() ? std::vector<std::string>{} : args[0].vars_;
        for (const auto& a : args) a.require_vars(target_vars);
        Poly r = constant(Scalar(0), target_vars);
        for (const auto& [m, c] : terms_) {
            Poly t = constant(c, target_vars);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0) t = t * args[i].pow(m[i]);
            r = r + t;
        }
        return r;
    }

    Scalar evaluate(const std::vector<Scalar>& point) const {
        if (point.size() != vars_.size())
            throw DomainError(ErrorCode::InvalidArgument, "evaluation arity mismatch");
        Scalar acc(0);
        for (const auto& [m, c] : terms_) {
            Scalar t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0) t *= point[i].pow(m[i]);
            acc += t;
        }
        return acc;
    }

    /// Re-expresses the polynomial over a larger variable list (a superset of
    /// the current one).
    Poly extend(const std::vector<std::string>& new_vars) const {
        std::vector<std::size_t> where(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
            if (it == new_vars.end())
                throw DomainError(ErrorCode::InvalidArgument,
                                  "extend: missing variable " + vars_[i]);
            where[i] = static_cast<std::size_t>(it - new_vars.begin());
        }
        Poly r(new_vars);
        for (const auto& [m, c] : terms_) {
            Monomial nm(new_vars.size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) nm[where[i]] = m[i];
            r.terms_[nm] = c;
        }
        return r;
    }

    Poly rename_variables(const std::vector<std::string>& new_names) const {
        if (new_names.size() != vars_.size())
            throw DomainError(ErrorCode::InvalidArgument, "rename arity mismatch");
        Poly r = *this;
        r.vars_ = new_names;
        return r;
    }

    /// Canonical rendering: terms in descending graded-lex order, `p/q`
    /// rationals, `i` for the imaginary unit, explicit `*` and `^`. The output
    /// re-parses to an equal polynomial.
    std::string render() const;

private:
    void require_same_vars(const Poly& o) const { require_vars(o.vars_); }
    void require_vars(const std::vector<std::string>& v) const {
        if (vars_ != v)
            throw DomainError(ErrorCode::InvalidArgument, "variable list mismatch");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

inline std::string Poly::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        Scalar c = it->second;

        bool is_const = (monomial_degree(m) == 0);
        std::string coeff;
        bool negate = false;
        if (c.is_rational()) {
            if (c.re() < 0) {
                negate = true;
                c = -c;
            }
            if (!c.is_one() || is_const) coeff = rational_to_string(c.re());
        } else if (c.re() == 0) {
            if (c.im() < 0) {
                negate = true;
                c = -c;
            }
            coeff = (c.im() == 1) ? "i" : rational_to_string(c.im()) + "*i";
        } else {
            // Mixed coefficient: parenthesized a +/- b*i.
            std::string inner = rational_to_string(c.re());
            inner += (c.im() > 0) ? " + " : " - ";
            Rational a = abs(c.im());
            inner += (a == 1) ? "i" : rational_to_string(a) + "*i";
            coeff = "(" + inner + ")";
        }

        if (first) {
            if (negate) out += "-";
            first = false;
        } else {
            out += negate ? " - " : " + ";
        }

        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (coeff.empty()) {
            out += mono;
        } else if (mono.empty()) {
            out += coeff;
        } else {
            out += coeff + "*" + mono;
        }
    }
    return out;
}

namespace detail {

// Recursive-descent parser for the polynomial grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' uint]
//   atom   := rational | 'i' | identifier | '(' expr ')'
class PolyParser {
public:
    PolyParser(const std::string& text, std::optional<std::vector<std::string>> declared)
        : text_(text) {
        if (declared) {
            vars_ = std::move(*declared);
            declared_ = true;
        } else {
            scan_variables();
        }
    }

    Poly parse() {
        pos_ = 0;
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
        return p;
    }

private:
    // First pass in first-occurrence order when no declaration is given.
    void scan_variables() {
        std::size_t p = 0;
        while (p < text_.size()) {
            char ch = text_[p];
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                std::size_t start = p;
                while (p < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_'))
                    ++p;
                std::string name = text_.substr(start, p - start);
                if (name != "i" &&
                    std::find(vars_.begin(), vars_.end(), name) == vars_.end())
                    vars_.push_back(name);
            } else {
                ++p;
            }
        }
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly parse_expr() {
        skip_ws();
        bool neg = accept('-');
        Poly acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            if (accept('+')) {
                acc = acc + parse_term();
            } else if (accept('-')) {
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        while (accept('*')) acc = acc * parse_factor();
        return acc;
    }

    Poly parse_factor() {
        Poly base = parse_atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == start) throw ParseError("expected exponent", pos_);
            std::string digits = text_.substr(start, pos_ - start);
            if (digits.size() > 10)
                throw DomainError(ErrorCode::ExponentOverflow, "exponent exceeds 2^31-1");
            std::uint64_t e = std::stoull(digits);
            if (e > 0x7fffffffull)
                throw DomainError(ErrorCode::ExponentOverflow, "exponent exceeds 2^31-1");
            return base.pow(e);
        }
        return base;
    }

    Poly parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Poly inner = parse_expr();
            skip_ws();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            Rational r = scan_rational(text_, pos_);
            return Poly::constant(Scalar(r), vars_);
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (name == "i") return Poly::constant(Scalar::i(), vars_);
            if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) {
                if (declared_)
                    throw ParseError("undeclared variable '" + name + "'", start);
                throw ParseError("unknown identifier '" + name + "'", start);
            }
            return Poly::variable(name, vars_);
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", pos_);
    }

    const std::string& text_;
    std::vector<std::string> vars_;
    bool declared_ = false;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the polynomial grammar. When `variables` is given, it fixes the
/// variable order and undeclared identifiers are rejected; otherwise variables
/// are collected in first-occurrence order.
inline Poly parse_poly(const std::string& text,
                       std::optional<std::vector<std::string>> variables = std::nullopt) {
    detail::PolyParser parser(text, std::move(variables));
    return parser.parse();
}

/// [df/dx_1, ..., df/dx_n], exactly.
inline std::vector<Poly> poly_jacobian(const Poly& f) {
    std::vector<Poly> out;
    out.reserve(f.var_count());
    for (std::size_t i = 0; i < f.var_count(); ++i) out.push_back(f.derivative(i));
    return out;
}

/// f(x) + g(y) on the disjoint union of variable lists. Clashing names in g
/// are suffixed with an apostrophe-free marker "_r".
inline Poly boxplus(const Poly& f, const Poly& g) {
    std::vector<std::string> gvars = g.variables();
    for (auto& name : gvars) {
        while (std::find(f.variables().begin(), f.variables().end(), name) !=
               f.variables().end())
            name += "_r";
    }
    Poly g2 = g.rename_variables(gvars);
    std::vector<std::string> all = f.variables();
    all.insert(all.end(), gvars.begin(), gvars.end());
    return f.extend(all) + g2.extend(all);
}

} // namespace dtcalc
