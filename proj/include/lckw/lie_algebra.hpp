#pragma once

#include "lckw/dense.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace lckw {

/// Finite-dimensional real Lie algebra given by structure constants in a
/// fixed basis e_0..e_{d-1}: [e_i, e_j] = sum_k c^k_{ij} e_k.
///
/// Only pairs i < j are ever set; the opposite entries are filled in by
/// antisymmetry, so c^k_{ij} = -c^k_{ji} holds by construction. The Jacobi
/// identity is not assumed; see validate_algebra().
template <class S>
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim, S(0)) {
    if (dim == 0) throw std::invalid_argument("Lie algebra dimension must be positive");
  }

  std::size_t dim() const { return dim_; }

  /// Sets [e_i, e_j] = sum_k coeffs[k] e_k. Requires i < j.
  void set_bracket(std::size_t i, std::size_t j, const Vec<S>& coeffs) {
    if (i >= j) throw std::invalid_argument("brackets are stored for i < j only");
    check_index(j);
    if (coeffs.size() != dim_) throw std::invalid_argument("bracket coefficient vector has wrong size");
    for (std::size_t k = 0; k < dim_; ++k) {
      at(i, j, k) = coeffs[k];
      at(j, i, k) = -coeffs[k];
    }
  }

  /// Adds coeff * e_k to [e_i, e_j]. Requires i < j.
  void add_bracket_term(std::size_t i, std::size_t j, std::size_t k, const S& coeff) {
    if (i >= j) throw std::invalid_argument("brackets are stored for i < j only");
    check_index(j);
    check_index(k);
    at(i, j, k) += coeff;
    at(j, i, k) -= coeff;
  }

  /// c^k_{ij}
  const S& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  Vec<S> bracket(const Vec<S>& x, const Vec<S>& y) const {
    Vec<S> r(dim_, S(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j] == 0 || i == j) continue;
        const S w = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k) r[k] += w * c(i, j, k);
      }
    }
    return r;
  }

  Vec<S> basis_bracket(std::size_t i, std::size_t j) const {
    Vec<S> r(dim_);
    for (std::size_t k = 0; k < dim_; ++k) r[k] = c(i, j, k);
    return r;
  }

  /// Matrix of ad_{e_i}: column j holds [e_i, e_j].
  Matrix<S> ad(std::size_t i) const {
    Matrix<S> m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) = c(i, j, k);
    return m;
  }

  /// tr ad_{e_i}
  S ad_trace(std::size_t i) const {
    S t(0);
    for (std::size_t j = 0; j < dim_; ++j) t += c(i, j, j);
    return t;
  }

  /// The algebra in the permuted basis f_a = e_{perm[a]}.
  LieAlgebra relabeled(const std::vector<std::size_t>& perm) const {
    if (perm.size() != dim_) throw std::invalid_argument("permutation has wrong size");
    std::vector<std::size_t> inv(dim_);
    for (std::size_t a = 0; a < dim_; ++a) inv[perm[a]] = a;
    LieAlgebra r(dim_);
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = a + 1; b < dim_; ++b)
        for (std::size_t k = 0; k < dim_; ++k) {
          const S& v = c(perm[a], perm[b], k);
          if (v != 0) r.add_bracket_term(a, b, inv[k], v);
        }
    return r;
  }

  template <class T>
  LieAlgebra<T> cast() const {
    LieAlgebra<T> r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          const S& v = c(i, j, k);
          if (v == 0) continue;
          if constexpr (std::is_same_v<T, double>)
            r.add_bracket_term(i, j, k, to_double(v));
          else
            r.add_bracket_term(i, j, k, T(v));
        }
    return r;
  }

  bool operator==(const LieAlgebra& o) const { return dim_ == o.dim_ && c_ == o.c_; }

  /// Number of nonzero brackets [e_i, e_j] with i < j.
  std::size_t nonzero_bracket_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != 0) {
            ++n;
            break;
          }
    return n;
  }

 private:
  S& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  void check_index(std::size_t i) const {
    if (i >= dim_) throw std::out_of_range("basis index out of range");
  }

  std::size_t dim_ = 0;
  std::vector<S> c_;
};

struct ValidationReport {
  bool jacobi = false;
  bool unimodular = false;
  double max_jacobi_residual = 0.0;
};

/// Checks the Jacobi identity on all basis triples and unimodularity
/// (tr ad_{e_i} = 0). Exact in rational mode; `tol` applies in float mode.
template <class S>
ValidationReport validate_algebra(const LieAlgebra<S>& alg, double tol = kFloatTolerance) {
  const std::size_t d = alg.dim();
  ValidationReport rep;
  bool exact_zero = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
        for (std::size_t m = 0; m < d; ++m) {
          S acc(0);
          for (std::size_t p = 0; p < d; ++p) {
            acc += alg.c(i, j, p) * alg.c(p, k, m);
            acc += alg.c(j, k, p) * alg.c(p, i, m);
            acc += alg.c(k, i, p) * alg.c(p, j, m);
          }
          if (acc != 0) exact_zero = false;
          rep.max_jacobi_residual = std::max(rep.max_jacobi_residual, std::fabs(to_double(acc)));
        }
      }
  if constexpr (ScalarTraits<S>::exact)
    rep.jacobi = exact_zero;
  else
    rep.jacobi = rep.max_jacobi_residual < tol;
  rep.unimodular = true;
  for (std::size_t i = 0; i < d; ++i)
    if (!is_zero(alg.ad_trace(i), tol)) rep.unimodular = false;
  return rep;
}

}  // namespace lckw
