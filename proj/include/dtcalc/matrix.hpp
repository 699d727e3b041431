#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "dtcalc/errors.hpp"

namespace dtcalc {

/// Dense matrix over an exact field (or ring, for targets that only add and
/// multiply). T must value-initialize to zero and support +, -, *, ==;
/// elimination-based members additionally need /.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw DomainError(ErrorCode::InvalidArgument, "ragged matrix initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = T() - data_[k];
        return r;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DomainError(ErrorCode::InvalidArgument, "matrix shape mismatch in product");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) = r(i, j) + aik * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& m) {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t k = 0; k < m.data_.size(); ++k) r.data_[k] = s * m.data_[k];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<T> row(std::size_t i) const {
        std::vector<T> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    Matrix pow(unsigned long e) const {
        require_square();
        Matrix acc = identity(rows_), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!(v == T())) return false;
        return true;
    }

    /// Exact rank via Gaussian elimination over the fraction field.
    std::size_t rank() const {
        Matrix m = *this;
        std::size_t r = 0;
        for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
            std::size_t pivot = r;
            while (pivot < rows_ && m(pivot, col) == T()) ++pivot;
            if (pivot == rows_) continue;
            m.swap_rows(pivot, r);
            T inv = T(1) / m(r, col);
            for (std::size_t j = col; j < cols_; ++j) m(r, j) = m(r, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || m(i, col) == T()) continue;
                T f = m(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    m(i, j) = m(i, j) - f * m(r, j);
            }
            ++r;
        }
        return r;
    }

    T det() const {
        require_square();
        Matrix m = *this;
        T d(1);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = col;
            while (pivot < rows_ && m(pivot, col) == T()) ++pivot;
            if (pivot == rows_) return T();
            if (pivot != col) {
                m.swap_rows(pivot, col);
                d = T() - d;
            }
            d = d * m(col, col);
            T inv = T(1) / m(col, col);
            for (std::size_t i = col + 1; i < rows_; ++i) {
                if (m(i, col) == T()) continue;
                T f = m(i, col) * inv;
                for (std::size_t j = col; j < cols_; ++j)
                    m(i, j) = m(i, j) - f * m(col, j);
            }
        }
        return d;
    }

    Matrix inverse() const {
        require_square();
        Matrix m = *this;
        Matrix inv = identity(rows_);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = col;
            while (pivot < rows_ && m(pivot, col) == T()) ++pivot;
            if (pivot == rows_)
                throw DomainError(ErrorCode::SingularMatrix, "matrix is not invertible");
            m.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            T pinv = T(1) / m(col, col);
            for (std::size_t j = 0; j < cols_; ++j) {
                m(col, j) = m(col, j) * pinv;
                inv(col, j) = inv(col, j) * pinv;
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == col || m(i, col) == T()) continue;
                T f = m(i, col);
                for (std::size_t j = 0; j < cols_; ++j) {
                    m(i, j) = m(i, j) - f * m(col, j);
                    inv(i, j) = inv(i, j) - f * inv(col, j);
                }
            }
        }
        return inv;
    }

    /// Solves X * (*this) = rhs for X (row-vector convention), i.e. expresses
    /// the rows of rhs in terms of the rows of *this. Throws if inconsistent.
    Matrix solve_left(const Matrix& rhs) const {
        if (rhs.cols_ != cols_)
            throw DomainError(ErrorCode::InvalidArgument, "shape mismatch in solve_left");
        // Transpose to the usual column form: (*this)^T * X^T = rhs^T.
        Matrix a = transpose();
        Matrix b = rhs.transpose();
        std::size_t n = a.rows_, m = a.cols_;
        std::vector<std::size_t> pivot_col;
        std::size_t r = 0;
        for (std::size_t col = 0; col < m && r < n; ++col) {
            std::size_t pivot = r;
            while (pivot < n && a(pivot, col) == T()) ++pivot;
            if (pivot == n) continue;
            a.swap_rows(pivot, r);
            b.swap_rows(pivot, r);
            T inv = T(1) / a(r, col);
            for (std::size_t j = 0; j < m; ++j) a(r, j) = a(r, j) * inv;
            for (std::size_t j = 0; j < b.cols_; ++j) b(r, j) = b(r, j) * inv;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == r || a(i, col) == T()) continue;
                T f = a(i, col);
                for (std::size_t j = 0; j < m; ++j) a(i, j) = a(i, j) - f * a(r, j);
                for (std::size_t j = 0; j < b.cols_; ++j) b(i, j) = b(i, j) - f * b(r, j);
            }
            pivot_col.push_back(col);
            ++r;
        }
        for (std::size_t i = r; i < n; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!(b(i, j) == T()))
                    throw DomainError(ErrorCode::InvalidArgument,
                                      "inconsistent linear system in solve_left");
        Matrix xt(m, b.cols_);
        for (std::size_t k = 0; k < pivot_col.size(); ++k)
            for (std::size_t j = 0; j < b.cols_; ++j) xt(pivot_col[k], j) = b(k, j);
        return xt.transpose();
    }

    /// Basis of the right kernel {v : (*this) v = 0}, returned as rows.
    Matrix kernel_basis() const {
        Matrix m = *this;
        std::size_t n = cols_;
        std::vector<long> pivot_of_col(n, -1);
        std::size_t r = 0;
        for (std::size_t col = 0; col < n && r < rows_; ++col) {
            std::size_t pivot = r;
            while (pivot < rows_ && m(pivot, col) == T()) ++pivot;
            if (pivot == rows_) continue;
            m.swap_rows(pivot, r);
            T inv = T(1) / m(r, col);
            for (std::size_t j = 0; j < n; ++j) m(r, j) = m(r, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || m(i, col) == T()) continue;
                T f = m(i, col);
                for (std::size_t j = 0; j < n; ++j) m(i, j) = m(i, j) - f * m(r, j);
            }
            pivot_of_col[col] = static_cast<long>(r);
            ++r;
        }
        std::vector<std::size_t> free_cols;
        for (std::size_t col = 0; col < n; ++col)
            if (pivot_of_col[col] < 0) free_cols.push_back(col);
        Matrix basis(free_cols.size(), n);
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            std::size_t fc = free_cols[k];
            basis(k, fc) = T(1);
            for (std::size_t col = 0; col < n; ++col) {
                long pr = pivot_of_col[col];
                if (pr >= 0) basis(k, col) = T() - m(static_cast<std::size_t>(pr), fc);
            }
        }
        return basis;
    }

    /// Stacks rows of b below rows of *this.
    Matrix vstack(const Matrix& b) const {
        if (!empty() && !b.empty() && cols_ != b.cols_)
            throw DomainError(ErrorCode::InvalidArgument, "column mismatch in vstack");
        std::size_t c = empty() ? b.cols_ : cols_;
        Matrix r(rows_ + b.rows_, c);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < c; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < c; ++j) r(rows_ + i, j) = b(i, j);
        return r;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    void require_square() const {
        if (rows_ != cols_)
            throw DomainError(ErrorCode::InvalidArgument, "square matrix required");
    }
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DomainError(ErrorCode::InvalidArgument, "matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

} // namespace dtcalc
