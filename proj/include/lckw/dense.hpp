#pragma once

#include "lckw/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lckw {

template <class S>
using Vec = std::vector<S>;

/// Small dense row-major matrix. Works over doubles and exact rationals.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const S& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  Vec<S> operator*(const Vec<S>& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vec<S> r(rows_, S(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  Matrix operator*(const S& c) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= c;
    return r;
  }

  bool operator==(const Matrix& o) const = default;

  /// Largest absolute entry, as a double.
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::fabs(to_double(x)));
    return m;
  }

  template <class T>
  Matrix<T> cast() const {
    Matrix<T> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if constexpr (std::is_same_v<T, double>)
          r(i, j) = to_double((*this)(i, j));
        else
          r(i, j) = T((*this)(i, j));
      }
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

namespace detail {

template <class S>
bool pivot_is_zero(const S& x, double tol) {
  return is_zero(x, tol);
}

}  // namespace detail

/// Solves A x = b for square nonsingular A by Gaussian elimination with
/// partial pivoting. Returns nullopt if A is singular (to `tol` in float mode).
template <class S>
std::optional<Vec<S>> solve(Matrix<S> a, Vec<S> b, double tol = 1e-14) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(to_double(a(col, col)));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::fabs(to_double(a(r, col)));
      if (v > best || (best == 0.0 && a(r, col) != 0)) {
        best = v;
        piv = r;
      }
    }
    if (detail::pivot_is_zero(a(piv, col), tol)) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const S f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  Vec<S> x(n, S(0));
  for (std::size_t i = n; i-- > 0;) {
    S acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a, double tol = 1e-14) {
  const std::size_t n = a.rows();
  Matrix<S> inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec<S> e(n, S(0));
    e[j] = S(1);
    auto col = solve(a, e, tol);
    if (!col) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*col)[i];
  }
  return inv;
}

/// Row rank by elimination (exact in rational mode).
template <class S>
std::size_t rank(Matrix<S> a, double tol = 1e-10) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t piv = r;
    double best = -1.0;
    for (std::size_t i = r; i < a.rows(); ++i) {
      const double v = std::fabs(to_double(a(i, col)));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (is_zero(a(piv, col), tol)) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(piv, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const S f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Least-squares solution of A x ≈ b through the normal equations.
/// A must have full column rank. Exact when the system is consistent in
/// rational mode.
template <class S>
std::optional<Vec<S>> least_squares(const Matrix<S>& a, const Vec<S>& b) {
  const Matrix<S> at = a.transpose();
  return solve(at * a, at * b, 1e-13);
}

/// Determinant by elimination.
template <class S>
S determinant(Matrix<S> a) {
  const std::size_t n = a.rows();
  S det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = -1.0;
    for (std::size_t r = col; r < n; ++r) {
      const double v = std::fabs(to_double(a(r, col)));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (a(piv, col) == 0) return S(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const S f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Positive definiteness via exact/float Cholesky-free pivot test
/// (all leading pivots of symmetric elimination positive).
template <class S>
bool is_positive_definite(Matrix<S> a) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(a(k, k) > 0)) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const S f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

}  // namespace lckw
