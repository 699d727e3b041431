#pragma once

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <map>
#include <numeric>
#include <vector>

#include "dtcalc/cyclotomic.hpp"
#include "dtcalc/errors.hpp"
#include "dtcalc/hlaurent.hpp"
#include "dtcalc/matrix.hpp"
#include "dtcalc/scalar.hpp"

namespace dtcalc {

/// Representative of a mod-1 class in the section G = {-1 < Re <= 0}.
inline Rational reduce_into_G(const Rational& a) {
    // r = a - ceil(a): the unique r with r = a (mod 1) and -1 < r <= 0.
    Integer num = numerator(a), den = denominator(a);
    Integer q = num / den;        // truncated toward zero
    if (num > q * den) q += 1;    // ceiling
    return a - Rational(q);
}

/// Jordan data of one generalized eigenvalue: the exponent r in G (the
/// eigenvalue of T is exp(-2*pi*i*r)) and the block sizes, descending.
struct JordanBlockSet {
    Rational exponent;
    std::vector<int> sizes;

    int dim() const {
        int d = 0;
        for (int s : sizes) d += s;
        return d;
    }
    friend bool operator==(const JordanBlockSet& a, const JordanBlockSet& b) {
        return a.exponent == b.exponent && a.sizes == b.sizes;
    }
};

/// Quasi-unipotent automorphism in spectral form. Canonicalized: one entry per
/// exponent, exponents strictly increasing, sizes descending. Two data with
/// equal block multisets compare equal.
class MonodromyData {
public:
    MonodromyData() = default;
    explicit MonodromyData(std::vector<JordanBlockSet> blocks) {
        std::map<Rational, std::vector<int>> merged;
        for (auto& b : blocks) {
            if (!(b.exponent > Rational(-1)) || b.exponent > 0)
                throw DomainError(ErrorCode::InvalidArgument,
                                  "exponent outside G = (-1, 0]");
            for (int s : b.sizes) {
                if (s <= 0)
                    throw DomainError(ErrorCode::InvalidArgument,
                                      "Jordan sizes must be positive");
                merged[b.exponent].push_back(s);
            }
        }
        for (auto& [e, sizes] : merged) {
            std::sort(sizes.begin(), sizes.end(), std::greater<int>());
            blocks_.push_back(JordanBlockSet{e, sizes});
            for (int s : sizes) dim_ += s;
        }
    }

    static MonodromyData trivial(int dim) {
        return MonodromyData({JordanBlockSet{Rational(0), std::vector<int>(dim, 1)}});
    }

    const std::vector<JordanBlockSet>& blocks() const { return blocks_; }
    int dim() const { return dim_; }

    bool semisimple() const {
        for (const auto& b : blocks_)
            for (int s : b.sizes)
                if (s != 1) return false;
        return true;
    }

    /// Eigenvalue exponents with multiplicity, ascending.
    std::vector<Rational> exponents() const {
        std::vector<Rational> out;
        for (const auto& b : blocks_)
            for (int s : b.sizes) out.insert(out.end(), s, b.exponent);
        return out;
    }

    friend bool operator==(const MonodromyData& a, const MonodromyData& b) {
        return a.blocks_ == b.blocks_;
    }
    friend bool operator!=(const MonodromyData& a, const MonodromyData& b) {
        return !(a == b);
    }

private:
    std::vector<JordanBlockSet> blocks_;
    int dim_ = 0;
};

/// Free truncated h-Laurent module with derivation D; the standard lattice is
/// the span of the basis over nonnegative powers of h. D acts on coordinate
/// vectors by v |-> D_matrix * v + h*(dv/dh).
struct DiffModule {
    std::size_t rank = 0;
    HLMatrix d_matrix;

    /// D applied to a coordinate vector, including the Euler term, so that
    /// D(h v) = h (D + 1) v holds on scalar multiples.
    HLVector apply(const HLVector& v) const {
        HLVector out = hlaurent_apply(d_matrix, v);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + v[i].euler();
        return out;
    }
};

namespace detail {

// Characteristic polynomial coefficients c with det(xI - A) = sum c_k x^k,
// via the Faddeev-LeVerrier recursion (exact; divisions are by integers).
inline std::vector<Scalar> char_poly(const Matrix<Scalar>& a) {
    std::size_t n = a.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = Scalar(1);
    Matrix<Scalar> m = Matrix<Scalar>::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        Scalar tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        Scalar ck = -(tr / Scalar(Rational(static_cast<long>(k))));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += ck;
    }
    return c;
}

inline std::vector<Integer> positive_divisors(Integer v) {
    if (v < 0) v = -v;
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            small.push_back(d);
            Integer q = v / d;
            if (q != d) large.push_back(q);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// All rational roots of a rational-coefficient polynomial, with
// multiplicities. Returns false when the polynomial does not split over Q.
inline bool rational_roots(std::vector<Rational> coeffs,
                           std::map<Rational, int>& roots) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.size() <= 1) return true;
    // Factor out roots at zero.
    std::size_t vz = 0;
    while (vz < coeffs.size() && coeffs[vz] == 0) ++vz;
    if (vz > 0) {
        roots[Rational(0)] += static_cast<int>(vz);
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(vz));
    }
    while (coeffs.size() > 1) {
        // Clear denominators.
        Integer lcm = 1;
        for (const auto& c : coeffs) {
            Integer d = denominator(c);
            lcm = lcm / gcd(lcm, d) * d;
        }
        std::vector<Integer> ic(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            Rational scaled = coeffs[k] * Rational(lcm);
            ic[k] = numerator(scaled);
        }
        bool found = false;
        auto nums = positive_divisors(ic.front());
        auto dens = positive_divisors(ic.back());
        for (const auto& p : nums) {
            for (const auto& q : dens) {
                if (gcd(p, q) != 1) continue;
                for (int s : {1, -1}) {
                    Rational r(s > 0 ? p : Integer(-p), q);
                    // Horner evaluation.
                    Rational acc = 0;
                    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * r + coeffs[k];
                    if (acc == 0) {
                        roots[r] += 1;
                        // Synthetic division by (x - r).
                        std::vector<Rational> quo(coeffs.size() - 1);
                        Rational carry = coeffs.back();
                        for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
                            quo[k] = carry;
                            carry = coeffs[k] + carry * r;
                        }
                        coeffs = std::move(quo);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) return false;
    }
    return true;
}

// Jordan sizes of a matrix at a fixed eigenvalue from the nullity filtration
// of powers of (A - lambda I). F is any exact field type.
template <typename F>
std::vector<int> jordan_sizes_at(const Matrix<F>& shifted, std::size_t n) {
    std::vector<std::size_t> nullity{0};
    Matrix<F> p = Matrix<F>::identity(n);
    for (;;) {
        p = p * shifted;
        std::size_t nu = n - p.rank();
        if (nu == nullity.back()) break;
        nullity.push_back(nu);
        if (nu == n) break;
    }
    // blocks of size >= s: nullity[s] - nullity[s-1]
    std::vector<int> sizes;
    for (std::size_t s = 1; s < nullity.size(); ++s) {
        std::size_t geq_s = nullity[s] - nullity[s - 1];
        std::size_t geq_next =
            (s + 1 < nullity.size()) ? nullity[s + 1] - nullity[s] : 0;
        for (std::size_t c = 0; c < geq_s - geq_next; ++c)
            sizes.push_back(static_cast<int>(s));
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    return sizes;
}

} // namespace detail

/// Exact eigen-decomposition certificate: a Jordan basis over the cyclotomic
/// field Q(zeta_m) together with the Jordan form, so that T * P = P * J.
struct EigenDecomposition {
    MonodromyData data;
    unsigned cyclotomic_order = 4;
    Matrix<CycloElem> jordan_basis;   // columns are chain vectors
    Matrix<CycloElem> jordan_form;
    Matrix<CycloElem> embedded_input;

    bool verify() const {
        return embedded_input * jordan_basis == jordan_basis * jordan_form;
    }
};

/// Spectral form of an invertible quasi-unipotent matrix over Q(i): finds the
/// least k <= unipotence_bound with T^k unipotent, then reads off exponents in
/// G and Jordan data exactly, working over Q(zeta_lcm(4,k)).
inline EigenDecomposition eigen_decompose(const Matrix<Scalar>& t,
                                          unsigned unipotence_bound = 24) {
    std::size_t n = t.rows();
    if (n == 0 || t.rows() != t.cols())
        throw DomainError(ErrorCode::InvalidArgument, "square nonempty matrix required");
    if (t.det().is_zero())
        throw DomainError(ErrorCode::InvalidArgument, "matrix must be invertible");

    unsigned k = 0;
    Matrix<Scalar> tk = Matrix<Scalar>::identity(n);
    for (unsigned cand = 1; cand <= unipotence_bound; ++cand) {
        tk = tk * t;
        Matrix<Scalar> nil = tk - Matrix<Scalar>::identity(n);
        if (nil.pow(static_cast<unsigned long>(n)).is_zero()) {
            k = cand;
            break;
        }
    }
    if (k == 0)
        throw DomainError(ErrorCode::NotQuasiUnipotent,
                          "no power up to the bound is unipotent");

    unsigned m = std::lcm(4u, k);
    auto fld = std::make_shared<const CycloField>(m);
    Matrix<CycloElem> tf(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) tf(i, j) = embed_scalar(fld, t(i, j));

    EigenDecomposition out;
    out.cyclotomic_order = m;
    out.embedded_input = tf;
    out.jordan_basis = Matrix<CycloElem>(n, n);
    out.jordan_form = Matrix<CycloElem>(n, n);

    std::vector<JordanBlockSet> blocks;
    std::size_t col = 0;
    for (unsigned j = 0; j < k; ++j) {
        CycloElem lambda = CycloElem::zeta_power(fld, static_cast<long>(j) * (m / k));
        Matrix<CycloElem> shifted = tf;
        for (std::size_t d = 0; d < n; ++d) shifted(d, d) = shifted(d, d) - lambda;
        if (shifted.rank() == n) continue;  // not an eigenvalue

        std::vector<int> sizes = detail::jordan_sizes_at(shifted, n);
        // Eigenvalue exp(2*pi*i*j/k) = exp(-2*pi*i*r) for r = -j/k in G.
        Rational r = (j == 0) ? Rational(0)
                              : Rational(-static_cast<long>(j), static_cast<long>(k));
        blocks.push_back(JordanBlockSet{r, sizes});

        // Jordan chains: greedily complete the kernel filtration.
        int smax = sizes.front();
        std::vector<Matrix<CycloElem>> powers(static_cast<std::size_t>(smax) + 1);
        powers[0] = Matrix<CycloElem>::identity(n);
        for (int s = 1; s <= smax; ++s) powers[s] = powers[s - 1] * shifted;
        std::vector<Matrix<CycloElem>> kernels(static_cast<std::size_t>(smax) + 1);
        for (int s = 0; s <= smax; ++s) kernels[s] = powers[s].kernel_basis();

        std::vector<std::pair<std::vector<CycloElem>, int>> tops;  // (vector, length)
        for (int s = smax; s >= 1; --s) {
            Matrix<CycloElem> span = kernels[s - 1];
            for (const auto& [top, len] : tops) {
                // level-s vector of a longer chain: shifted^(len-s) * top
                if (len <= s) continue;
                Matrix<CycloElem> tcol(n, 1);
                for (std::size_t d = 0; d < n; ++d) tcol(d, 0) = top[d];
                Matrix<CycloElem> lv = powers[len - s] * tcol;
                Matrix<CycloElem> row(1, n);
                for (std::size_t d = 0; d < n; ++d) row(0, d) = lv(d, 0);
                span = span.vstack(row);
            }
            const Matrix<CycloElem>& cand = kernels[s];
            for (std::size_t c = 0; c < cand.rows(); ++c) {
                Matrix<CycloElem> row(1, n);
                for (std::size_t d = 0; d < n; ++d) row(0, d) = cand(c, d);
                Matrix<CycloElem> trial = span.vstack(row);
                if (trial.rank() > span.rank()) {
                    span = trial;
                    std::vector<CycloElem> v(n);
                    for (std::size_t d = 0; d < n; ++d) v[d] = cand(c, d);
                    tops.emplace_back(std::move(v), s);
                }
            }
        }

        // Emit chains ordered by decreasing length to match the sorted sizes.
        std::stable_sort(tops.begin(), tops.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        for (const auto& [top, len] : tops) {
            Matrix<CycloElem> tcol(n, 1);
            for (std::size_t d = 0; d < n; ++d) tcol(d, 0) = top[d];
            for (int step = len - 1; step >= 0; --step) {
                Matrix<CycloElem> v = powers[step] * tcol;
                for (std::size_t d = 0; d < n; ++d) out.jordan_basis(d, col) = v(d, 0);
                out.jordan_form(col, col) = lambda;
                if (step != len - 1) out.jordan_form(col - 1, col) = CycloElem(1);
                ++col;
            }
        }
    }
    if (col != n)
        throw DomainError(ErrorCode::NotExact, "eigen-decomposition lost dimensions");
    out.data = MonodromyData(std::move(blocks));
    return out;
}

/// Exponent map of the logarithm with eigenvalues in G: per block, the
/// semisimple exponent r plus a canonical strictly upper nilpotent part. The
/// nilpotent part is recorded in the chain basis that normalizes its
/// superdiagonal entries to 1; the scalar -1/(2 pi i) of the raw logarithm is
/// absorbed into that basis choice.
struct ExponentMap {
    std::vector<JordanBlockSet> blocks;

    Matrix<Scalar> matrix() const {
        int dim = 0;
        for (const auto& b : blocks) dim += b.dim();
        Matrix<Scalar> m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
        std::size_t at = 0;
        for (const auto& b : blocks)
            for (int s : b.sizes) {
                for (int j = 0; j < s; ++j) {
                    m(at + j, at + j) = Scalar(b.exponent);
                    if (j + 1 < s) m(at + j, at + j + 1) = Scalar(1);
                }
                at += static_cast<std::size_t>(s);
            }
        return m;
    }
};

inline ExponentMap log_monodromy(const MonodromyData& m) {
    return ExponentMap{m.blocks()};
}

/// RH^{-1} at a point: the free h-Laurent module of the same rank with
/// D = M acting on the standard lattice, constant in h.
inline DiffModule rh_inverse(const MonodromyData& m) {
    Matrix<Scalar> mm = log_monodromy(m).matrix();
    DiffModule d;
    d.rank = mm.rows();
    d.d_matrix = HLMatrix(mm.rows(), mm.cols());
    for (std::size_t i = 0; i < mm.rows(); ++i)
        for (std::size_t j = 0; j < mm.cols(); ++j)
            d.d_matrix(i, j) = HLaurent(mm(i, j));
    return d;
}

/// Recovers the monodromy data of T = exp(-2 pi i (D mod h)) from the standard
/// lattice. Requires the lattice to be D-stable with rational eigenvalues in
/// G; otherwise NoAdmissibleLattice.
inline MonodromyData lattice_reduce(const DiffModule& d) {
    std::size_t n = d.rank;
    if (d.d_matrix.rows() != n || d.d_matrix.cols() != n)
        throw DomainError(ErrorCode::InvalidArgument, "rank/matrix mismatch");
    Matrix<Scalar> d0(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const HLaurent& e = d.d_matrix(i, j);
            if (!e.is_zero() && e.order_low() < 0)
                throw DomainError(ErrorCode::NoAdmissibleLattice,
                                  "D does not preserve the standard lattice "
                                  "(negative powers of h)");
            d0(i, j) = e.coefficient(0);
        }

    std::vector<Scalar> cp = detail::char_poly(d0);
    std::vector<Rational> coeffs(cp.size());
    for (std::size_t kk = 0; kk < cp.size(); ++kk) {
        if (!cp[kk].is_rational())
            throw DomainError(ErrorCode::NoAdmissibleLattice,
                              "D mod h has irrational spectrum");
        coeffs[kk] = cp[kk].re();
    }
    std::map<Rational, int> roots;
    if (!detail::rational_roots(coeffs, roots))
        throw DomainError(ErrorCode::NoAdmissibleLattice,
                          "D mod h has irrational eigenvalues");
    // Integer differences block the canonical splitting of the lattice.
    for (auto it = roots.begin(); it != roots.end(); ++it)
        for (auto jt = std::next(it); jt != roots.end(); ++jt) {
            Rational diff = jt->first - it->first;
            if (denominator(diff) == 1 && diff != 0)
                throw DomainError(ErrorCode::NoAdmissibleLattice,
                                  "eigenvalues of D mod h differ by a nonzero integer");
        }
    std::vector<JordanBlockSet> blocks;
    for (const auto& [r, mult] : roots) {
        if (!(r > Rational(-1)) || r > 0)
            throw DomainError(ErrorCode::NoAdmissibleLattice,
                              "eigenvalue of D mod h lies outside G");
        Matrix<Scalar> shifted = d0;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= Scalar(r);
        blocks.push_back(JordanBlockSet{r, detail::jordan_sizes_at(shifted, n)});
    }
    return MonodromyData(std::move(blocks));
}

/// Numeric fallback (double precision): snaps eigenvalues of T to roots of
/// unity with denominator at most max_denominator. Approximate by design and
/// excluded from exact pipelines.
inline MonodromyData eigen_decompose_numeric(const Matrix<Scalar>& t,
                                             unsigned max_denominator = 64,
                                             double tol = 1e-10) {
    using C = std::complex<double>;
    std::size_t n = t.rows();
    if (n == 0 || t.rows() != t.cols())
        throw DomainError(ErrorCode::InvalidArgument, "square nonempty matrix required");
    std::vector<Scalar> cp = detail::char_poly(t);
    std::vector<C> c(cp.size());
    for (std::size_t k = 0; k < cp.size(); ++k)
        c[k] = C(static_cast<double>(cp[k].re()), static_cast<double>(cp[k].im()));

    // Durand-Kerner iteration on the monic characteristic polynomial.
    std::vector<C> roots(n);
    for (std::size_t i = 0; i < n; ++i)
        roots[i] = std::pow(C(0.4, 0.9), static_cast<double>(i + 1));
    auto eval = [&](C z) {
        C acc = 0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
        return acc;
    };
    for (int iter = 0; iter < 300; ++iter) {
        double moved = 0;
        for (std::size_t i = 0; i < n; ++i) {
            C denom = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            C delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }

    std::map<Rational, int> multiplicities;
    std::map<Rational, C> representatives;
    const double two_pi = 6.283185307179586476925286766559;
    for (const C& z : roots) {
        if (std::abs(std::abs(z) - 1.0) > tol)
            throw DomainError(ErrorCode::NotQuasiUnipotent,
                              "eigenvalue is off the unit circle");
        double theta = -std::arg(z) / two_pi;  // exp(-2 pi i r) = z
        // Snap to p/q with q <= max_denominator.
        Rational best;
        double best_err = 1e9;
        for (unsigned q = 1; q <= max_denominator; ++q) {
            double scaled = theta * q;
            long p = std::lround(scaled);
            double err = std::abs(scaled - p) / q;
            if (err < best_err) {
                best_err = err;
                best = Rational(p, static_cast<long>(q));
            }
        }
        if (best_err > tol)
            throw DomainError(ErrorCode::NotQuasiUnipotent,
                              "eigenvalue angle is not a small rational multiple of 2 pi");
        Rational r = reduce_into_G(best);
        multiplicities[r] += 1;
        representatives[r] = std::polar(1.0, -two_pi * static_cast<double>(r));
    }

    // Jordan sizes from numeric nullities of powers of (T - lambda I).
    std::vector<std::vector<C>> tn(n, std::vector<C>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            tn[i][j] = C(static_cast<double>(t(i, j).re()),
                         static_cast<double>(t(i, j).im()));
    auto numeric_rank = [&](std::vector<std::vector<C>> m) {
        std::size_t r = 0;
        for (std::size_t col = 0; col < n && r < n; ++col) {
            std::size_t pivot = r;
            double best_abs = std::abs(m[r][col]);
            for (std::size_t i = r + 1; i < n; ++i)
                if (std::abs(m[i][col]) > best_abs) {
                    best_abs = std::abs(m[i][col]);
                    pivot = i;
                }
            if (best_abs <= 1e-9) continue;
            std::swap(m[pivot], m[r]);
            for (std::size_t i = 0; i < n; ++i) {
                if (i == r) continue;
                C f = m[i][col] / m[r][col];
                for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[r][j];
            }
            ++r;
        }
        return r;
    };
    auto mat_mul = [&](const std::vector<std::vector<C>>& a,
                       const std::vector<std::vector<C>>& b) {
        std::vector<std::vector<C>> r(n, std::vector<C>(n, C(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k2 = 0; k2 < n; ++k2)
                for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k2] * b[k2][j];
        return r;
    };

    std::vector<JordanBlockSet> blocks;
    for (const auto& [r, mult] : multiplicities) {
        std::vector<std::vector<C>> shifted = tn;
        for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= representatives[r];
        std::vector<std::size_t> nullity{0};
        std::vector<std::vector<C>> p = shifted;
        for (;;) {
            std::size_t nu = n - numeric_rank(p);
            if (nu == nullity.back()) break;
            nullity.push_back(nu);
            if (nu >= static_cast<std::size_t>(mult)) break;
            p = mat_mul(p, shifted);
        }
        std::vector<int> sizes;
        for (std::size_t s = 1; s < nullity.size(); ++s) {
            std::size_t geq_s = nullity[s] - nullity[s - 1];
            std::size_t geq_next =
                (s + 1 < nullity.size()) ? nullity[s + 1] - nullity[s] : 0;
            for (std::size_t c2 = 0; c2 < geq_s - geq_next; ++c2)
                sizes.push_back(static_cast<int>(s));
        }
        // Pad with size-1 blocks if numerics under-resolved the filtration.
        int seen = 0;
        for (int s : sizes) seen += s;
        while (seen < mult) {
            sizes.push_back(1);
            ++seen;
        }
        blocks.push_back(JordanBlockSet{r, sizes});
    }
    return MonodromyData(std::move(blocks));
}

} // namespace dtcalc
