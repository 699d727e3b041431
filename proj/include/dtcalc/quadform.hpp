#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "dtcalc/errors.hpp"
#include "dtcalc/matrix.hpp"
#include "dtcalc/scalar.hpp"

namespace dtcalc {

/// Quadratic form on Q(i)^n given by its symmetric matrix. Degenerate forms
/// are allowed at construction and rejected by orientation operations.
class QuadForm {
public:
    QuadForm() = default;
    explicit QuadForm(Matrix<Scalar> m) : matrix_(std::move(m)) {
        if (matrix_.rows() != matrix_.cols())
            throw DomainError(ErrorCode::InvalidArgument, "quadratic form must be square");
        if (matrix_ != matrix_.transpose())
            throw DomainError(ErrorCode::InvalidArgument, "quadratic form must be symmetric");
    }

    static QuadForm standard(std::size_t n) { return QuadForm(Matrix<Scalar>::identity(n)); }

    std::size_t dim() const { return matrix_.rows(); }
    const Matrix<Scalar>& matrix() const { return matrix_; }
    Scalar det() const { return dim() == 0 ? Scalar(1) : matrix_.det(); }
    bool is_degenerate() const { return det().is_zero(); }

    QuadForm direct_sum(const QuadForm& o) const {
        Matrix<Scalar> m(dim() + o.dim(), dim() + o.dim());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) m(i, j) = matrix_(i, j);
        for (std::size_t i = 0; i < o.dim(); ++i)
            for (std::size_t j = 0; j < o.dim(); ++j)
                m(dim() + i, dim() + j) = o.matrix_(i, j);
        return QuadForm(std::move(m));
    }

    friend bool operator==(const QuadForm& a, const QuadForm& b) {
        return a.matrix_ == b.matrix_;
    }

private:
    Matrix<Scalar> matrix_;
};

/// The value whose square roots form the two orientations of (W, q) for the
/// chosen top vector: det(q) * basis_vol^2.
inline Scalar orientation_targets(const QuadForm& q, const Scalar& basis_vol) {
    Scalar d = q.det();
    if (d.is_zero())
        throw DomainError(ErrorCode::Degenerate, "degenerate form has no orientation torsor");
    return d * basis_vol * basis_vol;
}

/// Element of a Z/2 orientation torsor: a chosen square root of `target`.
/// The root is represented exactly as coeff * prod(sqrt(t) for t in radicals),
/// where each radical is a declared base point whose in-field square root does
/// not exist; equal radicals contract in pairs (sqrt(t)*sqrt(t) = t). The
/// invariant coeff^2 * prod(radicals) = target always holds.
class TorsorElement {
public:
    TorsorElement() : target_(1), coeff_(1) {}

    /// rep given in-field; rep^2 must equal target.
    TorsorElement(Scalar target, Scalar rep, std::string label = {})
        : target_(std::move(target)), coeff_(std::move(rep)), label_(std::move(label)) {
        check();
    }

    /// Chooses the square root of `target` with the given sign relative to the
    /// canonical base point (the canonical in-field root when one exists, the
    /// formal symbol sqrt(target) otherwise).
    static TorsorElement oriented(const Scalar& target, int sign, std::string label = {}) {
        if (sign != 1 && sign != -1)
            throw DomainError(ErrorCode::InvalidArgument, "orientation sign must be +-1");
        if (target.is_zero())
            throw DomainError(ErrorCode::Degenerate, "torsor over zero target");
        TorsorElement e;
        e.target_ = target;
        e.label_ = std::move(label);
        if (auto root = canonical_sqrt(target)) {
            e.coeff_ = (sign == 1) ? *root : -*root;
        } else {
            e.coeff_ = Scalar(sign);
            e.radicals_ = {target};
        }
        return e;
    }

    const Scalar& target() const { return target_; }
    const Scalar& coeff() const { return coeff_; }
    const std::vector<Scalar>& radicals() const { return radicals_; }
    const std::string& label() const { return label_; }
    bool in_field() const { return radicals_.empty(); }

    /// In-field representative; throws when the root is only formal.
    Scalar rep() const {
        if (!in_field())
            throw DomainError(ErrorCode::InvalidArgument,
                              "torsor element has no in-field representative");
        return coeff_;
    }

    /// +-1 relative to the canonical base point of the fiber.
    int sign() const {
        Scalar c = coeff_;
        if (c.re() < 0 || (c.re() == 0 && c.im() < 0)) return -1;
        return 1;
    }

    TorsorElement flipped() const {
        TorsorElement e = *this;
        e.coeff_ = -e.coeff_;
        return e;
    }

    TorsorElement inverse() const {
        // 1/(c * prod sqrt(t)) = (1/(c * prod t)) * prod sqrt(t).
        TorsorElement e;
        e.target_ = Scalar(1) / target_;
        Scalar denom = coeff_;
        for (const auto& t : radicals_) denom *= t;
        e.coeff_ = Scalar(1) / denom;
        e.radicals_ = radicals_;
        e.label_ = label_.empty() ? std::string() : label_ + "^-1";
        e.check();
        return e;
    }

    friend bool operator==(const TorsorElement& a, const TorsorElement& b) {
        return a.target_ == b.target_ && a.coeff_ == b.coeff_ && a.radicals_ == b.radicals_;
    }
    friend bool operator!=(const TorsorElement& a, const TorsorElement& b) {
        return !(a == b);
    }

private:
    friend TorsorElement torsor_sum(const TorsorElement&, const TorsorElement&);

    void check() const {
        Scalar sq = coeff_ * coeff_;
        for (const auto& t : radicals_) sq *= t;
        if (sq != target_)
            throw DomainError(ErrorCode::InvalidArgument,
                              "torsor representative does not square to its target");
        for (const auto& t : radicals_)
            if (canonical_sqrt(t))
                throw DomainError(ErrorCode::InvalidArgument,
                                  "radical base point has an in-field root");
    }

    struct ScalarLess {
        bool operator()(const Scalar& a, const Scalar& b) const {
            if (a.re() != b.re()) return a.re() < b.re();
            return a.im() < b.im();
        }
    };

    void contract_radicals() {
        std::sort(radicals_.begin(), radicals_.end(), ScalarLess{});
        std::vector<Scalar> kept;
        std::size_t i = 0;
        while (i < radicals_.size()) {
            if (i + 1 < radicals_.size() && radicals_[i] == radicals_[i + 1]) {
                coeff_ *= radicals_[i];  // sqrt(t)*sqrt(t) = t
                i += 2;
            } else {
                kept.push_back(radicals_[i]);
                ++i;
            }
        }
        radicals_ = std::move(kept);
    }

    Scalar target_;
    Scalar coeff_;
    std::vector<Scalar> radicals_;
    std::string label_;
};

/// Monoidal sum of torsor elements: targets multiply, representatives
/// multiply, labels concatenate.
inline TorsorElement torsor_sum(const TorsorElement& a, const TorsorElement& b) {
    TorsorElement e;
    e.target_ = a.target_ * b.target_;
    e.coeff_ = a.coeff_ * b.coeff_;
    e.radicals_ = a.radicals_;
    e.radicals_.insert(e.radicals_.end(), b.radicals_.begin(), b.radicals_.end());
    e.contract_radicals();
    if (a.label_.empty()) {
        e.label_ = b.label_;
    } else if (b.label_.empty()) {
        e.label_ = a.label_;
    } else {
        e.label_ = a.label_ + "(+)" + b.label_;
    }
    e.check();
    return e;
}

} // namespace dtcalc
