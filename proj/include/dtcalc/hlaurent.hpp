#pragma once

#include <limits>
#include <string>
#include <vector>

#include "dtcalc/errors.hpp"
#include "dtcalc/matrix.hpp"
#include "dtcalc/scalar.hpp"

namespace dtcalc {

/// Default truncation order for series constructed without an explicit window.
inline constexpr long kDefaultHTruncation = 16;

/// Truncated Laurent series in the formal parameter h ("hbar"). Coefficients
/// are exact scalars. Every value carries a validity window: exponents k with
/// k < valid_to() are known exactly; higher ones are unknown. Values built
/// from finitely many terms are exact (infinite window), and operations record
/// the window of the result instead of silently truncating.
class HLaurent {
public:
    static constexpr long kExact = std::numeric_limits<long>::max();

    HLaurent() = default;
    HLaurent(const Scalar& c) {
        if (!c.is_zero()) {
            low_ = 0;
            coeffs_ = {c};
        }
    }
    HLaurent(int c) : HLaurent(Scalar(c)) {}

    /// c * h^k as an exact value.
    static HLaurent term(const Scalar& c, long k) {
        HLaurent r;
        if (!c.is_zero()) {
            r.low_ = k;
            r.coeffs_ = {c};
        }
        return r;
    }

    static HLaurent h_power(long k) { return term(Scalar(1), k); }

    /// Series from coefficients [c_low, c_low+1, ...] valid up to (excluding)
    /// valid_to; valid_to defaults to low + kDefaultHTruncation.
    static HLaurent truncated(long low, std::vector<Scalar> coeffs, long valid_to) {
        HLaurent r;
        r.low_ = low;
        r.coeffs_ = std::move(coeffs);
        r.valid_to_ = valid_to;
        r.normalize();
        if (r.window_empty())
            throw DomainError(ErrorCode::WindowUnderflow,
                              "series window contains no coefficients");
        return r;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_exact() const { return valid_to_ == kExact; }
    long order_low() const { return low_; }
    long valid_to() const { return valid_to_; }

    Scalar coefficient(long k) const {
        if (k >= valid_to_)
            throw DomainError(ErrorCode::WindowUnderflow,
                              "coefficient outside validity window");
        if (coeffs_.empty() || k < low_ || k >= low_ + static_cast<long>(coeffs_.size()))
            return Scalar(0);
        return coeffs_[static_cast<std::size_t>(k - low_)];
    }

    /// Constant coefficient (exponent 0).
    Scalar constant_coefficient() const { return coefficient(0); }

    HLaurent operator-() const {
        HLaurent r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend HLaurent operator+(const HLaurent& a, const HLaurent& b) {
        HLaurent r;
        r.valid_to_ = std::min(a.valid_to_, b.valid_to_);
        long lo = std::min(a.effective_low(), b.effective_low());
        long hi = std::max(a.effective_high(), b.effective_high());
        if (lo <= hi) {
            r.low_ = lo;
            r.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Scalar(0));
            a.accumulate_into(r);
            b.accumulate_into(r);
        }
        r.normalize();
        r.check_window();
        return r;
    }
    friend HLaurent operator-(const HLaurent& a, const HLaurent& b) { return a + (-b); }

    friend HLaurent operator*(const HLaurent& a, const HLaurent& b) {
        HLaurent r;
        // Window of a product: each operand's unknown tail pollutes exponents
        // >= (its valid_to + other's lowest known exponent). A tail multiplied
        // against known-zero content contributes nothing.
        long vt = kExact;
        if (a.valid_to_ != kExact && !b.is_zero())
            vt = std::min(vt, a.valid_to_ + b.effective_low());
        if (b.valid_to_ != kExact && !a.is_zero())
            vt = std::min(vt, b.valid_to_ + a.effective_low());
        if (a.valid_to_ != kExact && b.valid_to_ != kExact)
            vt = std::min(vt, a.valid_to_ + b.valid_to_);
        r.valid_to_ = vt;
        if (!a.is_zero() && !b.is_zero()) {
            r.low_ = a.low_ + b.low_;
            r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
            for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
                if (a.coeffs_[i].is_zero()) continue;
                for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                    r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        r.normalize();
        r.check_window();
        return r;
    }

    friend bool operator==(const HLaurent& a, const HLaurent& b) {
        return a.low_ == b.low_ && a.valid_to_ == b.valid_to_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const HLaurent& a, const HLaurent& b) { return !(a == b); }

    /// True when the two series have identical coefficients on the overlap of
    /// their validity windows.
    bool agrees_with(const HLaurent& o) const {
        long vt = std::min(valid_to_, o.valid_to_);
        long lo = std::min(effective_low(), o.effective_low());
        long hi = std::max(effective_high(), o.effective_high());
        for (long k = lo; k <= hi && k < vt; ++k)
            if (coefficient(k) != o.coefficient(k)) return false;
        return true;
    }

    /// Euler derivation h*d/dh: maps c*h^k to k*c*h^k. Window is preserved.
    HLaurent euler() const {
        HLaurent r = *this;
        for (std::size_t j = 0; j < r.coeffs_.size(); ++j)
            r.coeffs_[j] *= Scalar(Rational(r.low_ + static_cast<long>(j)));
        r.normalize();
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return is_exact() ? "0" : "O(h^" + std::to_string(valid_to_) + ")";
        std::string out;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            if (coeffs_[j].is_zero()) continue;
            if (!out.empty()) out += " + ";
            long k = low_ + static_cast<long>(j);
            std::string c = coeffs_[j].to_string();
            if (k == 0) {
                out += c;
            } else {
                if (c != "1") out += "(" + c + ")*";
                out += (k == 1) ? "h" : "h^" + std::to_string(k);
            }
        }
        if (!is_exact()) out += " + O(h^" + std::to_string(valid_to_) + ")";
        return out;
    }

private:
    long effective_low() const { return coeffs_.empty() ? 0 : low_; }
    long effective_high() const {
        return coeffs_.empty() ? -1 : low_ + static_cast<long>(coeffs_.size()) - 1;
    }
    bool window_empty() const {
        return valid_to_ != kExact && valid_to_ <= effective_low() && !coeffs_.empty();
    }

    void accumulate_into(HLaurent& r) const {
        for (std::size_t j = 0; j < coeffs_.size(); ++j)
            r.coeffs_[static_cast<std::size_t>(low_ + static_cast<long>(j) - r.low_)] +=
                coeffs_[j];
    }

    void normalize() {
        // Drop coefficients at or above valid_to: they carry no information.
        if (valid_to_ != kExact) {
            long hi = effective_high();
            if (!coeffs_.empty() && hi >= valid_to_) {
                long keep = valid_to_ - low_;
                coeffs_.resize(keep > 0 ? static_cast<std::size_t>(keep) : 0);
            }
        }
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            low_ = 0;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
            low_ += static_cast<long>(lead);
        }
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    void check_window() const {
        if (valid_to_ != kExact && valid_to_ <= low_ && !coeffs_.empty())
            throw DomainError(ErrorCode::WindowUnderflow,
                              "operation result valid to fewer than one coefficient");
    }

    long low_ = 0;
    long valid_to_ = kExact;
    std::vector<Scalar> coeffs_;
};

using HLVector = std::vector<HLaurent>;
using HLMatrix = Matrix<HLaurent>;

/// Exact matrix-vector product over truncated Laurent series; the resulting
/// windows are recorded entrywise. Throws WindowUnderflow when a resulting
/// entry would have no valid coefficients at all.
inline HLVector hlaurent_apply(const HLMatrix& op, const HLVector& v) {
    if (op.cols() != v.size())
        throw DomainError(ErrorCode::InvalidArgument, "operator/vector size mismatch");
    HLVector out(op.rows());
    for (std::size_t i = 0; i < op.rows(); ++i) {
        HLaurent acc;
        for (std::size_t j = 0; j < v.size(); ++j) acc = acc + op(i, j) * v[j];
        if (!acc.is_exact() && acc.valid_to() <= acc.order_low() && acc.is_zero())
            throw DomainError(ErrorCode::WindowUnderflow,
                              "result window has fewer than one valid coefficient");
        out[i] = acc;
    }
    return out;
}

} // namespace dtcalc
