#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dtcalc/errors.hpp"
#include "dtcalc/matrix.hpp"
#include "dtcalc/scalar.hpp"

namespace dtcalc {

/// Symplectic vector space over Q(i): an even-dimensional space with an
/// antisymmetric invertible form, given by its matrix in the ambient basis.
class SymplecticSpace {
public:
    explicit SymplecticSpace(Matrix<Scalar> form) : form_(std::move(form)) {
        if (form_.rows() != form_.cols() || form_.rows() == 0 || form_.rows() % 2 != 0)
            throw DomainError(ErrorCode::InvalidArgument,
                              "symplectic form must be square of even positive dimension");
        for (std::size_t i = 0; i < form_.rows(); ++i)
            for (std::size_t j = 0; j < form_.cols(); ++j)
                if (form_(i, j) != -form_(j, i))
                    throw DomainError(ErrorCode::InvalidArgument,
                                      "symplectic form must be antisymmetric");
        if (form_.det().is_zero())
            throw DomainError(ErrorCode::InvalidArgument,
                              "symplectic form must be nondegenerate");
    }

    /// The model V = L + L* in the basis (e_1..e_n, e_1*..e_n*) with pairing
    /// omega(x+eta, y+xi) = eta(y) - xi(x), i.e. omega(e_i, e_j*) = -delta_ij.
    static SymplecticSpace standard(std::size_t n) {
        Matrix<Scalar> form(2 * n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            form(i, n + i) = Scalar(-1);
            form(n + i, i) = Scalar(1);
        }
        return SymplecticSpace(std::move(form));
    }

    std::size_t dim() const { return form_.rows(); }
    std::size_t n() const { return form_.rows() / 2; }
    const Matrix<Scalar>& form() const { return form_; }

    Scalar omega(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const {
        Scalar acc(0);
        for (std::size_t i = 0; i < dim(); ++i) {
            if (v[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j)
                acc += v[i] * form_(i, j) * w[j];
        }
        return acc;
    }

    friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) {
        return a.form_ == b.form_;
    }

private:
    Matrix<Scalar> form_;
};

using SpacePtr = std::shared_ptr<const SymplecticSpace>;

inline SpacePtr make_standard_space(std::size_t n) {
    return std::make_shared<SymplecticSpace>(SymplecticSpace::standard(n));
}

/// Lagrangian subspace given by an n x 2n basis matrix (rows span). Rank and
/// isotropy are checked at construction.
class LagrangianSubspace {
public:
    LagrangianSubspace(SpacePtr space, Matrix<Scalar> basis)
        : space_(std::move(space)), basis_(std::move(basis)) {
        const std::size_t n = space_->n();
        if (basis_.rows() != n || basis_.cols() != 2 * n)
            throw DomainError(ErrorCode::InvalidArgument,
                              "Lagrangian basis must be n x 2n");
        if (basis_.rank() != n)
            throw DomainError(ErrorCode::InvalidArgument,
                              "Lagrangian basis rows are dependent");
        Matrix<Scalar> pair = basis_ * space_->form() * basis_.transpose();
        if (!pair.is_zero())
            throw DomainError(ErrorCode::InvalidArgument,
                              "subspace is not isotropic");
    }

    const SpacePtr& space() const { return space_; }
    const Matrix<Scalar>& basis() const { return basis_; }
    std::size_t n() const { return space_->n(); }

    friend bool operator==(const LagrangianSubspace& a, const LagrangianSubspace& b) {
        return *a.space_ == *b.space_ && a.basis_ == b.basis_;
    }

private:
    SpacePtr space_;
    Matrix<Scalar> basis_;
};

/// In the standard space, the horizontal Lagrangian L = span(e_1..e_n).
inline LagrangianSubspace horizontal_lagrangian(const SpacePtr& space) {
    std::size_t n = space->n();
    Matrix<Scalar> b(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) b(i, i) = Scalar(1);
    return LagrangianSubspace(space, std::move(b));
}

/// In the standard space, the vertical Lagrangian L* = span(e_1*..e_n*).
inline LagrangianSubspace vertical_lagrangian(const SpacePtr& space) {
    std::size_t n = space->n();
    Matrix<Scalar> b(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) b(i, n + i) = Scalar(1);
    return LagrangianSubspace(space, std::move(b));
}

/// Graph {(l, A l)} of a symmetric map A: L -> L* in the standard space;
/// Lagrangian iff A is symmetric (checked by the constructor via isotropy).
inline LagrangianSubspace graph_lagrangian(const SpacePtr& space, const Matrix<Scalar>& a) {
    std::size_t n = space->n();
    if (a.rows() != n || a.cols() != n)
        throw DomainError(ErrorCode::InvalidArgument, "graph matrix must be n x n");
    Matrix<Scalar> b(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        b(i, i) = Scalar(1);
        for (std::size_t j = 0; j < n; ++j) b(i, n + j) = a(j, i);
    }
    return LagrangianSubspace(space, std::move(b));
}

/// Invertible map between Lagrangians arising from a transversality chain.
/// When dual_flag is set the target is the dual of `target`, expressed in the
/// dual of its stored basis.
struct LagChainMap {
    LagrangianSubspace source;
    LagrangianSubspace target;
    Matrix<Scalar> matrix;  // column-vector convention: x |-> matrix * x
    bool dual_flag = false;
};

namespace detail {

inline void require_same_space(const LagrangianSubspace& a, const LagrangianSubspace& b) {
    if (!(*a.space() == *b.space()))
        throw DomainError(ErrorCode::InvalidArgument,
                          "subspaces live in different symplectic spaces");
}

// Matrix of f_{L1L2}: L1 -> L2*, f(v) = omega(v, -)|_{L2}, in the stored basis
// of L1 and the dual of the stored basis of L2.
inline Matrix<Scalar> pairing_matrix(const LagrangianSubspace& l1,
                                     const LagrangianSubspace& l2) {
    // Entry (j, i) = omega(v_i, w_j).
    return (l1.basis() * l1.space()->form() * l2.basis().transpose()).transpose();
}

} // namespace detail

inline bool transverse(const LagrangianSubspace& l1, const LagrangianSubspace& l2) {
    detail::require_same_space(l1, l2);
    return !detail::pairing_matrix(l1, l2).det().is_zero();
}

/// The pairing isomorphism f_{L1L2}: L1 -> L2*, v |-> omega(v, -).
inline LagChainMap pairing_map(const LagrangianSubspace& l1, const LagrangianSubspace& l2) {
    detail::require_same_space(l1, l2);
    Matrix<Scalar> m = detail::pairing_matrix(l1, l2);
    if (m.det().is_zero())
        throw DomainError(ErrorCode::NonTransverse, "subspaces are not transverse");
    return LagChainMap{l1, l2, std::move(m), true};
}

/// Chain map C(L_1,...,L_n) of a consecutively transverse sequence: the
/// alternating composite of f_{L1L2}, f_{L3L2}^{-1}, f_{L3L4}, ... Lands in
/// L_n for odd n and in L_n* for even n.
inline LagChainMap chain_map(const std::vector<LagrangianSubspace>& ls) {
    if (ls.empty())
        throw DomainError(ErrorCode::InvalidArgument, "chain must be nonempty");
    for (std::size_t k = 0; k + 1 < ls.size(); ++k) {
        detail::require_same_space(ls[k], ls[k + 1]);
        if (!transverse(ls[k], ls[k + 1]))
            throw DomainError(ErrorCode::NonTransverse,
                              "chain members " + std::to_string(k + 1) + " and " +
                                  std::to_string(k + 2) + " are not transverse");
    }
    std::size_t n = ls[0].n();
    Matrix<Scalar> acc = Matrix<Scalar>::identity(n);
    bool in_dual = false;  // whether acc currently lands in a dual space
    std::size_t at = 0;    // index of the space acc lands in (or its dual)
    while (at + 1 < ls.size()) {
        if (!in_dual) {
            // f_{L_at, L_{at+1}}: L_at -> L_{at+1}*
            acc = detail::pairing_matrix(ls[at], ls[at + 1]) * acc;
            in_dual = true;
            ++at;
        } else {
            // f_{L_{at+1}, L_at}^{-1}: L_at* -> L_{at+1}
            acc = detail::pairing_matrix(ls[at + 1], ls[at]).inverse() * acc;
            in_dual = false;
            ++at;
        }
    }
    return LagChainMap{ls.front(), ls.back(), std::move(acc), in_dual};
}

/// Maslov quadratic form q(L1, L2, L3) on L1: the symmetric matrix of the
/// self-dual chain map C(L1, L2, L3, L1). Symmetry is asserted, not assumed.
inline Matrix<Scalar> maslov_form(const LagrangianSubspace& l1,
                                  const LagrangianSubspace& l2,
                                  const LagrangianSubspace& l3) {
    if (!transverse(l3, l1))
        throw DomainError(ErrorCode::NonTransverse, "chain members 3 and 1 are not transverse");
    LagChainMap c = chain_map({l1, l2, l3, l1});
    Matrix<Scalar> q = c.matrix;
    if (q != q.transpose())
        throw DomainError(ErrorCode::NotExact,
                          "Maslov chain map failed to be self-dual");
    return q;
}

/// Split law: C(L_k,...,L_m) after C(L_1,...,L_k) equals C(L_1,...,L_m) when
/// k is odd (1-indexed).
inline bool chain_composition_check(const std::vector<LagrangianSubspace>& ls,
                                    std::size_t split_index) {
    if (split_index < 1 || split_index > ls.size() || split_index % 2 == 0)
        throw DomainError(ErrorCode::InvalidArgument,
                          "split index must be odd and within the chain");
    std::vector<LagrangianSubspace> head(ls.begin(), ls.begin() + split_index);
    std::vector<LagrangianSubspace> tail(ls.begin() + split_index - 1, ls.end());
    LagChainMap c_head = chain_map(head);
    LagChainMap c_tail = chain_map(tail);
    LagChainMap c_full = chain_map(ls);
    Matrix<Scalar> composed = c_tail.matrix * c_head.matrix;
    return composed == c_full.matrix && c_tail.dual_flag == c_full.dual_flag;
}

/// Replaces the back-and-forth (..., L_{p-1}, L_p, L_{p-1}, ...) at position p
/// (0-indexed into ls) by the single member L_{p-1} and checks the chain map
/// is unchanged.
inline bool backandforth_deletion_check(const std::vector<LagrangianSubspace>& ls,
                                        std::size_t p) {
    if (p == 0 || p + 1 >= ls.size())
        throw DomainError(ErrorCode::InvalidArgument, "position is not a back-and-forth");
    if (!(ls[p - 1] == ls[p + 1]))
        throw DomainError(ErrorCode::InvalidArgument, "chain has no back-and-forth here");
    std::vector<LagrangianSubspace> reduced;
    reduced.reserve(ls.size() - 2);
    for (std::size_t k = 0; k < ls.size(); ++k)
        if (k != p && k != p + 1) reduced.push_back(ls[k]);
    LagChainMap full = chain_map(ls);
    LagChainMap red = chain_map(reduced);
    return full.matrix == red.matrix && full.dual_flag == red.dual_flag;
}

} // namespace dtcalc
