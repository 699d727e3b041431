#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "dtcalc/errors.hpp"
#include "dtcalc/matrix.hpp"
#include "dtcalc/monodromy.hpp"
#include "dtcalc/poly.hpp"
#include "dtcalc/quadform.hpp"
#include "dtcalc/scalar.hpp"

namespace dtcalc {

/// Degree cap for the Jacobian-ideal staircase; exceeding it is reported as a
/// non-isolated singularity.
inline constexpr std::uint64_t kMilnorDegreeBound = 64;

namespace detail {

// Division with remainder by a list of generators: repeatedly cancels leading
// terms, moving irreducible leading terms to the remainder.
inline Poly reduce_by(const Poly& p, const std::vector<Poly>& gens) {
    Poly work = p;
    Poly rem(p.variables());
    while (!work.is_zero()) {
        auto lead = std::prev(work.terms().end());
        const Monomial& lm = lead->first;
        const Scalar lc = lead->second;
        bool reduced = false;
        for (const auto& g : gens) {
            auto glead = std::prev(g.terms().end());
            if (!monomial_divides(glead->first, lm)) continue;
            Monomial q = monomial_quotient(lm, glead->first);
            Poly factor(p.variables());
            factor.add_term(q, lc / glead->second);
            work = work - factor * g;
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            Poly drop(p.variables());
            drop.add_term(lm, lc);
            work = work - drop;
        }
    }
    return rem;
}

// Buchberger with the coprime-leading-term criterion. The degree bound guards
// against non-isolated inputs producing an unbounded staircase.
inline std::vector<Poly> groebner_basis(std::vector<Poly> gens, std::uint64_t degree_bound) {
    std::vector<Poly> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(std::move(g));
    if (basis.empty()) return basis;

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    auto lead_mono = [](const Poly& g) -> const Monomial& {
        return std::prev(g.terms().end())->first;
    };

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        const Monomial &mi = lead_mono(basis[i]), &mj = lead_mono(basis[j]);
        Monomial lcm(mi.size());
        bool coprime = true;
        for (std::size_t v = 0; v < mi.size(); ++v) {
            lcm[v] = std::max(mi[v], mj[v]);
            if (mi[v] > 0 && mj[v] > 0) coprime = false;
        }
        if (coprime) continue;  // S-polynomial reduces to zero

        Poly fi(basis[i].variables()), fj(basis[j].variables());
        fi.add_term(monomial_quotient(lcm, mi),
                    Scalar(1) / std::prev(basis[i].terms().end())->second);
        fj.add_term(monomial_quotient(lcm, mj),
                    Scalar(1) / std::prev(basis[j].terms().end())->second);
        Poly s = fi * basis[i] - fj * basis[j];
        Poly r = reduce_by(s, basis);
        if (r.is_zero()) continue;
        if (r.total_degree() > degree_bound)
            throw DomainError(ErrorCode::NotIsolated,
                              "Jacobian staircase does not terminate below degree " +
                                  std::to_string(degree_bound));
        std::size_t idx = basis.size();
        basis.push_back(std::move(r));
        for (std::size_t t = 0; t < idx; ++t) pairs.emplace_back(t, idx);
    }
    return basis;
}

} // namespace detail

/// The Jacobian quotient Q(i)[x]/Jac(f) of an isolated singularity at the
/// origin: a monomial basis by graded-lex normal forms, its dimension mu, and
/// the reduction map. (The quotient is the full Jacobian quotient; it equals
/// the local Milnor algebra at 0 when 0 is the only critical point, which
/// holds for every quasi-homogeneous isolated singularity.)
class MilnorAlgebra {
public:
    explicit MilnorAlgebra(Poly f, std::uint64_t degree_bound = kMilnorDegreeBound)
        : f_(std::move(f)) {
        const std::size_t nv = f_.var_count();
        if (nv == 0)
            throw DomainError(ErrorCode::InvalidArgument,
                              "potential must have at least one variable");
        if (!f_.constant_term().is_zero())
            throw DomainError(ErrorCode::NotSingular, "f(0) != 0");
        std::vector<Poly> jac = poly_jacobian(f_);
        for (const auto& d : jac)
            if (!d.constant_term().is_zero())
                throw DomainError(ErrorCode::NotSingular, "df(0) != 0");
        gb_ = detail::groebner_basis(jac, degree_bound);

        // Zero-dimensionality: each variable needs a pure power among the
        // leading terms.
        std::vector<std::uint64_t> pure_power(nv, 0);
        for (const auto& g : gb_) {
            const Monomial& lm = std::prev(g.terms().end())->first;
            int support = -1;
            for (std::size_t v = 0; v < nv; ++v)
                if (lm[v] > 0) {
                    if (support >= 0) {
                        support = -2;
                        break;
                    }
                    support = static_cast<int>(v);
                }
            if (support >= 0) {
                std::uint64_t e = lm[static_cast<std::size_t>(support)];
                auto& best = pure_power[static_cast<std::size_t>(support)];
                if (best == 0 || e < best) best = e;
            }
        }
        for (std::size_t v = 0; v < nv; ++v)
            if (pure_power[v] == 0 || pure_power[v] > degree_bound)
                throw DomainError(ErrorCode::NotIsolated,
                                  "no pure power of " + f_.variables()[v] +
                                      " in the leading-term ideal");

        // Standard monomials: below the pure-power box and not divisible by
        // any leading term.
        std::vector<Monomial> leads;
        for (const auto& g : gb_) leads.push_back(std::prev(g.terms().end())->first);
        Monomial cur(nv, 0);
        for (;;) {
            bool divisible = false;
            for (const auto& lm : leads)
                if (monomial_divides(lm, cur)) {
                    divisible = true;
                    break;
                }
            if (!divisible) basis_.push_back(cur);
            std::size_t v = 0;
            while (v < nv) {
                if (cur[v] + 1 < pure_power[v]) {
                    ++cur[v];
                    break;
                }
                cur[v] = 0;
                ++v;
            }
            if (v == nv) break;
        }
        std::sort(basis_.begin(), basis_.end(), GrlexLess{});
    }

    const Poly& f() const { return f_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    std::size_t mu() const { return basis_.size(); }

    /// Graded-lex normal form modulo Jac(f); idempotent, linear.
    Poly reduce(const Poly& p) const { return detail::reduce_by(p, gb_); }

    /// Coordinates of reduce(p) in the monomial basis.
    std::vector<Scalar> coordinates(const Poly& p) const {
        Poly nf = reduce(p);
        std::vector<Scalar> out(basis_.size(), Scalar(0));
        for (const auto& [m, c] : nf.terms()) {
            auto it = std::lower_bound(basis_.begin(), basis_.end(), m, GrlexLess{});
            if (it == basis_.end() || *it != m)
                throw DomainError(ErrorCode::NotExact,
                                  "normal form left the staircase basis");
            out[static_cast<std::size_t>(it - basis_.begin())] = c;
        }
        return out;
    }

private:
    Poly f_;
    std::vector<Poly> gb_;
    std::vector<Monomial> basis_;
};

inline MilnorAlgebra milnor_algebra(const Poly& f,
                                    std::uint64_t degree_bound = kMilnorDegreeBound) {
    return MilnorAlgebra(f, degree_bound);
}

/// Positive rational weights w with f(t^{w_1} x_1, ...) = t f, when they
/// exist: the minimum-norm solution of <a, w> = 1 over the support, verified
/// against every support monomial. Returns nullopt otherwise.
inline std::optional<std::vector<Rational>> qh_weights(const Poly& f) {
    if (f.is_zero() || !f.constant_term().is_zero()) return std::nullopt;
    const std::size_t nv = f.var_count();
    std::vector<Monomial> support;
    for (const auto& [m, c] : f.terms()) support.push_back(m);

    // Select a row-independent subset of the support.
    Matrix<Scalar> rows(0, nv);
    for (const auto& m : support) {
        Matrix<Scalar> row(1, nv);
        for (std::size_t v = 0; v < nv; ++v) row(0, v) = Scalar(Rational(m[v]));
        Matrix<Scalar> trial = rows.vstack(row);
        if (trial.rank() > rows.rank()) rows = trial;
    }
    // Minimum-norm solution of R w = 1: w = R^T (R R^T)^{-1} 1.
    Matrix<Scalar> gram = rows * rows.transpose();
    Matrix<Scalar> ones(rows.rows(), 1);
    for (std::size_t i = 0; i < rows.rows(); ++i) ones(i, 0) = Scalar(1);
    Matrix<Scalar> w;
    try {
        w = rows.transpose() * gram.inverse() * ones;
    } catch (const DomainError&) {
        return std::nullopt;
    }
    std::vector<Rational> weights(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        const Scalar& s = w(v, 0);
        if (!s.is_rational() || !(s.re() > 0)) return std::nullopt;
        weights[v] = s.re();
    }
    // Verify every support monomial, not just the selected subset.
    for (const auto& m : support) {
        Rational acc = 0;
        for (std::size_t v = 0; v < nv; ++v) acc += Rational(m[v]) * weights[v];
        if (acc != 1) return std::nullopt;
    }
    return weights;
}

/// Multiset of spectral values of an isolated quasi-homogeneous singularity.
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<Rational> values) : values_(std::move(values)) {
        std::sort(values_.begin(), values_.end());
    }

    const std::vector<Rational>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    friend bool operator==(const Spectrum& a, const Spectrum& b) {
        return a.values_ == b.values_;
    }
    friend bool operator!=(const Spectrum& a, const Spectrum& b) { return !(a == b); }

private:
    std::vector<Rational> values_;
};

/// Unit for the Thom-Sebastiani product: the zero-variable singularity.
inline Spectrum unit_spectrum() { return Spectrum({Rational(0)}); }

namespace detail {

inline std::vector<Rational> require_weights(const Poly& f) {
    auto w = qh_weights(f);
    if (!w)
        throw DomainError(ErrorCode::NotQuasiHomogeneous,
                          "potential is not quasi-homogeneous");
    return *w;
}

} // namespace detail

/// Spectrum of a quasi-homogeneous isolated singularity: the multiset
/// { sum_i (a_i + 1) w_i : x^a in the Milnor basis }. Uses lambda = 1/2
/// normalization throughout.
inline Spectrum spectrum(const Poly& f) {
    std::vector<Rational> w = detail::require_weights(f);
    MilnorAlgebra alg(f);
    std::vector<Rational> vals;
    vals.reserve(alg.mu());
    for (const auto& a : alg.basis()) {
        Rational acc = 0;
        for (std::size_t v = 0; v < a.size(); ++v) acc += Rational(a[v] + 1) * w[v];
        vals.push_back(acc);
    }
    return Spectrum(std::move(vals));
}

/// Matrix of D = h d/dh - f/h + (1/2 - lambda) on the Milnor lattice in the
/// basis classes x^a dx. The f/h term is rewritten with the Euler identity
/// f = sum_i w_i x_i d_i f as an exact df-wedge and replaced by the exterior
/// derivative of the contraction; the result is read off against the basis by
/// normal-form reduction. Serves as the independent oracle for spectrum().
inline Matrix<Scalar> twisted_dr_operator(const Poly& f,
                                          const Rational& lambda = Rational(1, 2)) {
    std::vector<Rational> w = detail::require_weights(f);
    MilnorAlgebra alg(f);
    const std::size_t nv = f.var_count();

    // Euler identity must hold exactly.
    Poly euler(f.variables());
    for (std::size_t v = 0; v < nv; ++v) {
        Poly xi = Poly::variable(f.variables()[v], f.variables());
        euler = euler + Scalar(w[v]) * (xi * f.derivative(v));
    }
    if (euler != f)
        throw DomainError(ErrorCode::NotQuasiHomogeneous,
                          "Euler identity fails for the computed weights");

    Matrix<Scalar> d(alg.mu(), alg.mu());
    Scalar shift = Scalar(Rational(1, 2) - lambda);
    for (std::size_t col = 0; col < alg.mu(); ++col) {
        Poly xa(f.variables());
        xa.add_term(alg.basis()[col], Scalar(1));
        // eta = sum_i (+-) w_i x_i x^a dx_{..i^..}; -f x^a dx / h = +d(eta).
        Poly deta(f.variables());
        for (std::size_t v = 0; v < nv; ++v) {
            Poly xi = Poly::variable(f.variables()[v], f.variables());
            Poly ci = Scalar(w[v]) * (xi * xa);
            deta = deta + ci.derivative(v);
        }
        std::vector<Scalar> coords = alg.coordinates(deta);
        for (std::size_t row = 0; row < alg.mu(); ++row) d(row, col) = coords[row];
        d(col, col) += shift;
    }
    return d;
}

/// Order parameter of the simple generator.
struct OrderParam {
    Rational lambda = Rational(1, 2);
};

/// Semisimple monodromy of the vanishing cycles of a quasi-homogeneous
/// isolated singularity: T = exp(-2 pi i D), exponents reduced into G.
inline MonodromyData vanishing_monodromy(const Poly& f) {
    Spectrum sp = spectrum(f);
    std::vector<JordanBlockSet> blocks;
    for (const auto& alpha : sp.values())
        blocks.push_back(JordanBlockSet{reduce_into_G(alpha), {1}});
    return MonodromyData(std::move(blocks));
}

/// Vanishing-cycle data with the sign twist (-1)^{ambient dim} applied to the
/// monodromy, plus the orientation-torsor slot used by stabilization.
struct PVData {
    MonodromyData monodromy;  // twisted exponents when twisted == true
    int ambient_dim = 0;
    bool twisted = false;
    std::optional<TorsorElement> torsor;
};

namespace detail {

inline MonodromyData shift_exponents(const MonodromyData& m, const Rational& delta) {
    std::vector<JordanBlockSet> blocks;
    for (const auto& b : m.blocks())
        blocks.push_back(JordanBlockSet{reduce_into_G(b.exponent + delta), b.sizes});
    return MonodromyData(std::move(blocks));
}

} // namespace detail

/// Twists the monodromy by (-1)^n: exponents shift by n/2 mod 1 into G.
inline PVData pv_twist(const MonodromyData& m, int ambient_dim) {
    PVData out;
    out.ambient_dim = ambient_dim;
    out.twisted = true;
    out.monodromy = (ambient_dim % 2 == 0)
                        ? m
                        : detail::shift_exponents(m, Rational(1, 2));
    return out;
}

/// Removes the twist, recovering the raw vanishing monodromy.
inline MonodromyData pv_untwist(const PVData& d) {
    if (!d.twisted) return d.monodromy;
    return (d.ambient_dim % 2 == 0)
               ? d.monodromy
               : detail::shift_exponents(d.monodromy, Rational(1, 2));
}

/// Thom-Sebastiani sum of spectra: the Minkowski sum of multisets.
inline Spectrum thom_sebastiani(const Spectrum& a, const Spectrum& b) {
    std::vector<Rational> vals;
    vals.reserve(a.size() * b.size());
    for (const auto& x : a.values())
        for (const auto& y : b.values()) vals.push_back(x + y);
    return Spectrum(std::move(vals));
}

/// Tensor product of semisimple monodromy data: exponents add, reduced into G.
inline MonodromyData thom_sebastiani(const MonodromyData& a, const MonodromyData& b) {
    if (!a.semisimple() || !b.semisimple())
        throw DomainError(ErrorCode::InvalidArgument,
                          "tensor rule implemented for semisimple data only");
    std::vector<JordanBlockSet> blocks;
    for (const auto& x : a.exponents())
        for (const auto& y : b.exponents())
            blocks.push_back(JordanBlockSet{reduce_into_G(x + y), {1}});
    return MonodromyData(std::move(blocks));
}

/// Thom-Sebastiani at the twisted level: ambient dimensions add; the sign
/// twists compose so twisted tensor = twist of the tensor.
inline PVData thom_sebastiani(const PVData& a, const PVData& b) {
    if (a.twisted != b.twisted)
        throw DomainError(ErrorCode::InvalidArgument,
                          "cannot combine twisted with untwisted data");
    PVData out;
    out.ambient_dim = a.ambient_dim + b.ambient_dim;
    out.twisted = a.twisted;
    out.monodromy = thom_sebastiani(a.monodromy, b.monodromy);
    if (a.torsor && b.torsor) {
        out.torsor = torsor_sum(*a.torsor, *b.torsor);
    } else if (a.torsor) {
        out.torsor = a.torsor;
    } else if (b.torsor) {
        out.torsor = b.torsor;
    }
    return out;
}

/// D-eigenvalue pinning the T_q normalization: (dim q + 1)/2 - lambda.
inline Rational tq_scale(const QuadForm& q, const OrderParam& lambda = {}) {
    if (q.is_degenerate())
        throw DomainError(ErrorCode::Degenerate, "T_q requires a nondegenerate form");
    return Rational(static_cast<long>(q.dim()) + 1, 2) - lambda.lambda;
}

/// The distinguished orientation of P_q under the T_q normalization at the
/// base-point choice alpha = 1: the positive root of det(q) over the standard
/// basis volume.
inline TorsorElement tq_orientation(const QuadForm& q) {
    return TorsorElement::oriented(orientation_targets(q, Scalar(1)), +1, "P_q");
}

/// Stabilization by a nondegenerate quadratic form: raw monodromy multiplies
/// by (-1)^{dim q} (exponents shift by dim q / 2 mod 1), the ambient dimension
/// grows, and the torsor slot picks up the T_q-normalized element of P_q.
/// Twisted data keeps its exponents unchanged, which is the point of the
/// twist.
inline PVData stabilize(const PVData& data, const QuadForm& q,
                        const OrderParam& lambda = {}) {
    if (q.is_degenerate())
        throw DomainError(ErrorCode::Degenerate,
                          "stabilization requires a nondegenerate form");
    (void)tq_scale(q, lambda);  // validated; reported by callers
    PVData out;
    out.ambient_dim = data.ambient_dim + static_cast<int>(q.dim());
    out.twisted = data.twisted;
    if (!data.twisted && q.dim() % 2 != 0)
        out.monodromy = detail::shift_exponents(data.monodromy, Rational(1, 2));
    else
        out.monodromy = data.monodromy;
    if (q.dim() > 0) {
        TorsorElement pq = tq_orientation(q);
        out.torsor = data.torsor ? torsor_sum(*data.torsor, pq) : pq;
    } else {
        out.torsor = data.torsor;
    }
    return out;
}

} // namespace dtcalc
