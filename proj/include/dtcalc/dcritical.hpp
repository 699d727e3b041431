#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtcalc/errors.hpp"
#include "dtcalc/matrix.hpp"
#include "dtcalc/poly.hpp"
#include "dtcalc/quadform.hpp"
#include "dtcalc/scalar.hpp"
#include "dtcalc/symplectic.hpp"
#include "dtcalc/vanishing.hpp"

namespace dtcalc {

/// Critical chart (R, U, f, i) at desk scale: the potential f on the chart U
/// with the origin as its verified isolated critical point.
struct CriticalChart {
    Poly f;
    std::size_t mu = 0;
    std::vector<std::vector<Scalar>> critical_points;  // the origin
};

inline CriticalChart make_critical_chart(Poly f) {
    MilnorAlgebra alg(f);  // validates f(0) = 0, df(0) = 0, isolation
    CriticalChart chart;
    chart.f = std::move(f);
    chart.mu = alg.mu();
    chart.critical_points = {std::vector<Scalar>(chart.f.var_count(), Scalar(0))};
    return chart;
}

/// Embedding of critical charts through a generating function h(l, m): the
/// elimination m(l) solving dh/dm = 0, the induced potential f = h(l, m(l)),
/// and the chart-change quadratic form q_xi (the m-Hessian at the critical
/// point).
struct ChartEmbedding {
    Poly h;
    std::vector<std::string> l_vars;
    std::vector<std::string> m_vars;
    std::vector<Poly> elimination;  // m_i as polynomials in l
    Poly f;                         // induced potential on l
    QuadForm q_xi;
};

inline ChartEmbedding embedding_quadform(const Poly& h,
                                         const std::vector<std::string>& l_vars,
                                         const std::vector<std::string>& m_vars,
                                         std::uint64_t degree_bound = 32) {
    const std::size_t nl = l_vars.size(), nm = m_vars.size();
    std::vector<std::string> all = l_vars;
    all.insert(all.end(), m_vars.begin(), m_vars.end());
    Poly hh = h.extend(all);  // fixes the (l, m) variable order

    std::vector<std::size_t> midx(nm);
    for (std::size_t i = 0; i < nm; ++i) midx[i] = nl + i;

    std::vector<Poly> dhm(nm);
    for (std::size_t i = 0; i < nm; ++i) dhm[i] = hh.derivative(midx[i]);

    std::vector<Scalar> origin(all.size(), Scalar(0));
    for (const auto& d : dhm)
        if (!d.evaluate(origin).is_zero())
            throw DomainError(ErrorCode::EliminationFailed,
                              "dh/dm does not vanish at the origin");

    // Constant m-Hessian block at the origin.
    Matrix<Scalar> h0(nm, nm);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j)
            h0(i, j) = dhm[i].derivative(midx[j]).evaluate(origin);
    if (h0.det().is_zero())
        throw DomainError(ErrorCode::SingularHessian,
                          "m-Hessian of h at the origin is singular");
    Matrix<Scalar> h0inv = h0.inverse();

    // Newton iteration for m(l) with dh/dm(l, m(l)) = 0, truncated degreewise.
    auto truncate = [&](const Poly& p) {
        Poly out(l_vars);
        for (const auto& [mono, c] : p.terms())
            if (monomial_degree(mono) <= degree_bound) out.add_term(mono, c);
        return out;
    };
    std::vector<Poly> m_of_l(nm, Poly(l_vars));
    auto substitution = [&](const std::vector<Poly>& melim) {
        std::vector<Poly> args;
        args.reserve(all.size());
        for (std::size_t i = 0; i < nl; ++i)
            args.push_back(Poly::variable(l_vars[i], l_vars));
        for (std::size_t i = 0; i < nm; ++i) args.push_back(melim[i]);
        return args;
    };
    bool solved = false;
    for (int iter = 0; iter < 64; ++iter) {
        auto args = substitution(m_of_l);
        std::vector<Poly> residual(nm);
        bool zero = true;
        for (std::size_t i = 0; i < nm; ++i) {
            residual[i] = dhm[i].substitute(args);
            if (!residual[i].is_zero()) zero = false;
        }
        if (zero) {
            solved = true;
            break;
        }
        std::vector<Poly> next(nm, Poly(l_vars));
        bool changed = false;
        for (std::size_t i = 0; i < nm; ++i) {
            Poly delta(l_vars);
            for (std::size_t j = 0; j < nm; ++j)
                delta = delta + h0inv(i, j) * residual[j];
            next[i] = truncate(m_of_l[i] - delta);
            if (next[i] != m_of_l[i]) changed = true;
        }
        if (!changed)
            throw DomainError(ErrorCode::EliminationFailed,
                              "elimination did not converge to a polynomial solution "
                              "below the degree bound");
        m_of_l = std::move(next);
    }
    if (!solved)
        throw DomainError(ErrorCode::EliminationFailed,
                          "elimination did not terminate");

    ChartEmbedding out;
    out.h = hh;
    out.l_vars = l_vars;
    out.m_vars = m_vars;
    out.elimination = m_of_l;
    out.f = hh.substitute(substitution(m_of_l));

    // q_xi: the m-Hessian evaluated at the critical point (0, m(0)) = origin.
    Matrix<Scalar> q(nm, nm);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j)
            q(i, j) = dhm[i].derivative(midx[j]).evaluate(origin);
    out.q_xi = QuadForm(std::move(q));
    return out;
}

/// Quadratic potential (1/2) m^T H m whose Hessian is the given form.
inline Poly quadform_potential(const QuadForm& q, const std::vector<std::string>& vars) {
    if (vars.size() != q.dim())
        throw DomainError(ErrorCode::InvalidArgument, "variable count mismatch");
    Poly p(vars);
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = 0; j < q.dim(); ++j) {
            if (q.matrix()(i, j).is_zero()) continue;
            Monomial m(vars.size(), 0);
            m[i] += 1;
            m[j] += 1;
            p.add_term(m, q.matrix()(i, j) / Scalar(2));
        }
    return p;
}

/// The model triple of Lagrangian tangent spaces at a critical point of a
/// chart change with m-Hessian H: T_M horizontal, the first polarization the
/// graph {(u, -H u)}, the second polarization vertical.
struct PolarizationTriple {
    LagrangianSubspace t_m;
    LagrangianSubspace t_pi1;
    LagrangianSubspace t_pi2;
};

inline PolarizationTriple standard_polarization_triple(const Matrix<Scalar>& hessian) {
    auto space = make_standard_space(hessian.rows());
    return PolarizationTriple{horizontal_lagrangian(space),
                              graph_lagrangian(space, -hessian),
                              vertical_lagrangian(space)};
}

/// Checks that the chart-change Hessian equals the Maslov quadratic form of
/// the polarization triple, computed through the symplectic chain machinery.
/// With no explicit triple the standard model triple for q_xi is used.
inline bool maslov_consistency(const ChartEmbedding& emb,
                               const std::optional<PolarizationTriple>& triple = std::nullopt) {
    const PolarizationTriple& t =
        triple ? *triple : standard_polarization_triple(emb.q_xi.matrix());
    if (t.t_m.n() != emb.q_xi.dim())
        throw DomainError(ErrorCode::InvalidArgument,
                          "polarization triple dimension does not match q_xi");
    Matrix<Scalar> q = maslov_form(t.t_m, t.t_pi1, t.t_pi2);
    return q == emb.q_xi.matrix();
}

inline bool maslov_consistency(const Poly& h, const std::vector<std::string>& l_vars,
                               const std::vector<std::string>& m_vars) {
    return maslov_consistency(embedding_quadform(h, l_vars, m_vars));
}

/// Kinds of chart torsors and the data defining their square-root targets.
enum class ChartTorsorKind { QL, QM, QLM, PXi, PUpsilon };

inline const char* chart_torsor_kind_name(ChartTorsorKind k) {
    switch (k) {
        case ChartTorsorKind::QL:       return "Q_L";
        case ChartTorsorKind::QM:       return "Q_M";
        case ChartTorsorKind::QLM:      return "Q_LM";
        case ChartTorsorKind::PXi:      return "P_Xi";
        case ChartTorsorKind::PUpsilon: return "P_Upsilon";
    }
    return "?";
}

struct ChartTorsorSpec {
    ChartTorsorKind kind;
    Scalar target;
};

/// Target of the square-root condition of a chart torsor at an evaluation
/// point. Q_L and Q_M take {pulled-back volume, own volume}; Q_LM takes
/// {vol_S, omega_L, omega_M}; P_Xi and P_Upsilon take {det q, basis volume}.
inline ChartTorsorSpec chart_torsor_target(ChartTorsorKind kind,
                                           const std::vector<Scalar>& vol_data) {
    auto ratio = [](const Scalar& num, const Scalar& den) {
        if (den.is_zero())
            throw DomainError(ErrorCode::DivisionByZero, "zero volume form");
        return num / den;
    };
    Scalar target;
    switch (kind) {
        case ChartTorsorKind::QL:
        case ChartTorsorKind::QM: {
            if (vol_data.size() != 2)
                throw DomainError(ErrorCode::InvalidArgument, "expected 2 volume scalars");
            target = ratio(vol_data[0], vol_data[1]);
            break;
        }
        case ChartTorsorKind::QLM: {
            if (vol_data.size() != 3)
                throw DomainError(ErrorCode::InvalidArgument, "expected 3 volume scalars");
            target = ratio(vol_data[0], vol_data[1] * vol_data[2]);
            break;
        }
        case ChartTorsorKind::PXi:
        case ChartTorsorKind::PUpsilon: {
            if (vol_data.size() != 2)
                throw DomainError(ErrorCode::InvalidArgument,
                                  "expected {det q, basis volume}");
            target = vol_data[0] * vol_data[1] * vol_data[1];
            break;
        }
    }
    if (target.is_zero())
        throw DomainError(ErrorCode::Degenerate,
                          "torsor target vanishes at the critical point");
    return ChartTorsorSpec{kind, target};
}

/// Representative-level map Lambda_Xi: Q_L -> Q_LM (x) P_Xi, s |-> u (x)
/// (u * omega_M) / s: the returned element has target (u.target * omega) /
/// s.target and representative (u.rep * sqrt(omega)) / s.rep.
inline TorsorElement lambda_map(const TorsorElement& s, const TorsorElement& u,
                                const Scalar& omega_target) {
    if (s.target().is_zero())
        throw DomainError(ErrorCode::DivisionByZero, "torsor element over zero target");
    TorsorElement sqrt_omega = TorsorElement::oriented(omega_target, +1, "vol");
    return torsor_sum(torsor_sum(u, sqrt_omega), s.inverse());
}

/// One leg of a chart-transition loop.
struct TorsorTransition {
    std::string from;
    std::string to;
    TorsorElement element;
};

/// Sign of the composite of torsor transitions around a loop: +1 means the
/// chart gluing is consistent. The legs must compose (to == next from, loop
/// closed) and the loop product must land in the trivial torsor.
inline int cocycle_check(const std::vector<TorsorTransition>& loop) {
    if (loop.empty())
        throw DomainError(ErrorCode::NonComposableChain, "empty loop");
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const auto& next = loop[(k + 1) % loop.size()];
        if (loop[k].to != next.from)
            throw DomainError(ErrorCode::NonComposableChain,
                              "transition " + std::to_string(k + 1) + " ends at '" +
                                  loop[k].to + "' but the next starts at '" + next.from +
                                  "'");
    }
    TorsorElement prod = loop[0].element;
    for (std::size_t k = 1; k < loop.size(); ++k)
        prod = torsor_sum(prod, loop[k].element);
    if (prod.target() != Scalar(1) || !prod.in_field())
        throw DomainError(ErrorCode::NonComposableChain,
                          "loop composite does not land in the trivial torsor");
    Scalar rep = prod.rep();
    if (rep == Scalar(1)) return +1;
    if (rep == Scalar(-1)) return -1;
    throw DomainError(ErrorCode::NonComposableChain,
                      "loop composite is not a sign");
}

/// Determinant-line comparison of a clean Lagrangian intersection, from the
/// exact sequence 0 -> T_LM -> T_L + T_M -> T_S -> T*_LM -> 0: the scalar c
/// with v_L (x) v_M = c * v_LM^2 once det(T_S) is trivialized by the chosen
/// volume (value vol_s on the standard basis). Its square-root torsor is the
/// local model of Q.
inline Scalar clean_intersection_data(const SymplecticSpace& space,
                                      const Matrix<Scalar>& b_l,
                                      const Matrix<Scalar>& b_m,
                                      const Matrix<Scalar>& b_lm,
                                      const Scalar& vol_s = Scalar(1)) {
    const std::size_t two_n = space.dim(), n = space.n();
    if (vol_s.is_zero())
        throw DomainError(ErrorCode::DivisionByZero, "zero trivializing volume");
    if (b_l.rows() != n || b_m.rows() != n || b_l.cols() != two_n ||
        b_m.cols() != two_n || b_lm.cols() != two_n)
        throw DomainError(ErrorCode::NotExact, "basis shapes do not match the space");
    const std::size_t k = b_lm.rows();
    if (b_lm.rank() != k || b_l.rank() != n || b_m.rank() != n)
        throw DomainError(ErrorCode::NotExact, "declared bases are rank-deficient");
    if (b_l.vstack(b_lm).rank() != n || b_m.vstack(b_lm).rank() != n)
        throw DomainError(ErrorCode::NotExact,
                          "intersection basis does not lie in both subspaces");
    if (b_l.vstack(b_m).rank() != 2 * n - k)
        throw DomainError(ErrorCode::NotExact,
                          "declared intersection rank does not match T_L + T_M");
    // Lagrangian inputs.
    if (!(b_l * space.form() * b_l.transpose()).is_zero() ||
        !(b_m * space.form() * b_m.transpose()).is_zero())
        throw DomainError(ErrorCode::NotExact, "subspaces are not Lagrangian");

    // Greedy completions: y within T_L, z within T_M, w within T_S.
    auto complete = [](const Matrix<Scalar>& base, const Matrix<Scalar>& pool,
                       std::size_t target_rank) {
        Matrix<Scalar> acc = base;
        Matrix<Scalar> chosen(0, base.cols());
        for (std::size_t r = 0; r < pool.rows() && acc.rank() < target_rank; ++r) {
            Matrix<Scalar> row(1, pool.cols());
            for (std::size_t j = 0; j < pool.cols(); ++j) row(0, j) = pool(r, j);
            Matrix<Scalar> trial = acc.vstack(row);
            if (trial.rank() > acc.rank()) {
                acc = trial;
                chosen = chosen.vstack(row);
            }
        }
        if (acc.rank() != target_rank)
            throw DomainError(ErrorCode::NotExact, "basis completion failed");
        return chosen;
    };

    Matrix<Scalar> y = complete(b_lm, b_l, n);
    Matrix<Scalar> z = complete(b_lm, b_m, n);
    Matrix<Scalar> xyz = b_lm.vstack(y).vstack(z);
    Matrix<Scalar> w = complete(xyz, Matrix<Scalar>::identity(two_n), two_n);

    // a, b: determinants of the change from the given bases to the adapted
    // ones: [x; y] = P_L * B_L, [x; z] = P_M * B_M.
    Scalar a = b_l.solve_left(b_lm.vstack(y)).det();
    Scalar b = b_m.solve_left(b_lm.vstack(z)).det();

    Scalar d = xyz.vstack(w).det();

    // G_{ij} = omega(w_i, x_j); its determinant realizes det of the map
    // T_S / (T_L + T_M) -> T*_LM. Exactness forces G invertible.
    Scalar det_g(1);
    if (k > 0) {
        Matrix<Scalar> g = w * space.form() * b_lm.transpose();
        det_g = g.det();
        if (det_g.is_zero())
            throw DomainError(ErrorCode::NotExact,
                              "omega pairing of the completion with T_LM is degenerate");
    }

    // Sign of the chosen splitting conventions.
    std::size_t nk = n - k;
    bool negative = ((nk % 2) != 0) && ((k + 1) % 2 != 0);
    Scalar c = d / (a * b * vol_s * det_g);
    return negative ? -c : c;
}

} // namespace dtcalc
