#pragma once

#include "lckw/dense.hpp"
#include "lckw/lie_algebra.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lckw {

using Index = std::vector<std::size_t>;

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// All strictly increasing k-tuples from {0..d-1}, in lexicographic order.
inline std::vector<Index> combinations(std::size_t d, std::size_t k) {
  std::vector<Index> out;
  if (k > d) return out;
  Index cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == d - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Lexicographic rank of a strictly increasing tuple among combinations(d, k).
inline std::size_t combination_rank(std::size_t d, const Index& idx) {
  const std::size_t k = idx.size();
  std::size_t r = 0;
  std::size_t prev = 0;
  for (std::size_t m = 0; m < k; ++m) {
    const std::size_t start = m == 0 ? 0 : prev + 1;
    for (std::size_t v = start; v < idx[m]; ++v) r += binomial(d - 1 - v, k - 1 - m);
    prev = idx[m];
  }
  return r;
}

/// Sorts `idx` in place and returns the permutation sign, or 0 if an index repeats.
inline int sort_with_sign(Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

/// Invariant k-form on a d-dimensional algebra. Components are stored for
/// strictly increasing index tuples I and mean alpha(e_{I_1}, ..., e_{I_k}),
/// so e^1 ∧ e^2 evaluates to 1 on (e_1, e_2).
template <class S>
class KForm {
 public:
  KForm() = default;
  KForm(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree), c_(binomial(dim, degree), S(0)) {
    if (degree > dim) throw std::invalid_argument("form degree exceeds dimension");
  }

  static KForm scalar(std::size_t dim, const S& value) {
    KForm f(dim, 0);
    f.c_[0] = value;
    return f;
  }

  /// e^{i_1} ∧ ... ∧ e^{i_k} for an arbitrary index tuple (sign from sorting).
  static KForm basis(std::size_t dim, Index idx) {
    KForm f(dim, idx.size());
    const int s = sort_with_sign(idx);
    if (s != 0) f.c_[combination_rank(dim, idx)] = S(s);
    return f;
  }

  /// 1-form with the given components.
  static KForm one_form(const Vec<S>& comps) {
    KForm f(comps.size(), 1);
    f.c_ = comps;
    return f;
  }

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return c_.size(); }

  const S& coeff(std::size_t rank) const { return c_[rank]; }
  S& coeff(std::size_t rank) { return c_[rank]; }

  /// Component on a strictly increasing tuple.
  const S& operator[](const Index& sorted) const { return c_[combination_rank(dim_, sorted)]; }
  S& operator[](const Index& sorted) { return c_[combination_rank(dim_, sorted)]; }

  /// alpha(e_{idx_1}, ..., e_{idx_k}) for an arbitrary tuple.
  S component(Index idx) const {
    const int s = sort_with_sign(idx);
    if (s == 0) return S(0);
    const S& v = c_[combination_rank(dim_, idx)];
    return s > 0 ? v : S(-v);
  }

  /// alpha(v_1, ..., v_k) on arbitrary vectors.
  S evaluate(const std::vector<Vec<S>>& vs) const {
    if (vs.size() != degree_) throw std::invalid_argument("wrong number of arguments for form");
    const auto combos = combinations(dim_, degree_);
    S total(0);
    for (std::size_t r = 0; r < combos.size(); ++r) {
      if (c_[r] == 0) continue;
      Matrix<S> m(degree_, degree_);
      for (std::size_t a = 0; a < degree_; ++a)
        for (std::size_t b = 0; b < degree_; ++b) m(a, b) = vs[b][combos[r][a]];
      total += c_[r] * determinant(m);
    }
    return total;
  }

  /// Component vector of a 1-form.
  Vec<S> as_vector() const {
    if (degree_ != 1) throw std::invalid_argument("as_vector requires a 1-form");
    return c_;
  }

  /// Antisymmetric matrix A_ij = alpha(e_i, e_j) of a 2-form.
  Matrix<S> as_matrix() const {
    if (degree_ != 2) throw std::invalid_argument("as_matrix requires a 2-form");
    Matrix<S> m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j) {
        const S& v = (*this)[Index{i, j}];
        m(i, j) = v;
        m(j, i) = -v;
      }
    return m;
  }

  /// 2-form from the antisymmetric part of m (only i < j entries are read).
  static KForm from_matrix(const Matrix<S>& m) {
    KForm f(m.rows(), 2);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i + 1; j < m.rows(); ++j) f[Index{i, j}] = m(i, j);
    return f;
  }

  KForm operator+(const KForm& o) const {
    check_same(o);
    KForm r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  KForm operator-(const KForm& o) const {
    check_same(o);
    KForm r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  KForm operator-() const {
    KForm r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  KForm operator*(const S& s) const {
    KForm r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend KForm operator*(const S& s, const KForm& f) { return f * s; }

  bool operator==(const KForm& o) const = default;

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : c_) m = std::max(m, std::fabs(to_double(x)));
    return m;
  }

  bool is_zero(double tol = kFloatTolerance) const {
    return std::all_of(c_.begin(), c_.end(), [&](const S& x) { return lckw::is_zero(x, tol); });
  }

  template <class T>
  KForm<T> cast() const {
    KForm<T> r(dim_, degree_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if constexpr (std::is_same_v<T, double>)
        r.coeff(i) = to_double(c_[i]);
      else
        r.coeff(i) = T(c_[i]);
    }
    return r;
  }

 private:
  void check_same(const KForm& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw std::invalid_argument("form shape mismatch");
  }

  std::size_t dim_ = 0;
  std::size_t degree_ = 0;
  std::vector<S> c_;
};

/// Symmetric bilinear form, stored as a full matrix.
template <class S>
struct SymTensor {
  Matrix<S> m;

  SymTensor() = default;
  explicit SymTensor(Matrix<S> mat) : m(std::move(mat)) {}
  static SymTensor zero(std::size_t d) { return SymTensor(Matrix<S>(d, d)); }

  std::size_t dim() const { return m.rows(); }
  const S& operator()(std::size_t i, std::size_t j) const { return m(i, j); }
  S& operator()(std::size_t i, std::size_t j) { return m(i, j); }

  S apply(const Vec<S>& x, const Vec<S>& y) const {
    S r(0);
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) r += x[i] * m(i, j) * y[j];
    return r;
  }

  double symmetry_defect() const { return (m - m.transpose()).max_abs(); }

  SymTensor operator+(const SymTensor& o) const { return SymTensor(m + o.m); }
  SymTensor operator-(const SymTensor& o) const { return SymTensor(m - o.m); }
  SymTensor operator*(const S& c) const { return SymTensor(m * c); }
  friend SymTensor operator*(const S& c, const SymTensor& t) { return t * c; }
  bool operator==(const SymTensor& o) const = default;

  /// a ⊗ b + b ⊗ a halved; for a == b this is a ⊗ a.
  static SymTensor outer(const Vec<S>& a, const Vec<S>& b) {
    SymTensor t = zero(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) t.m(i, j) = (a[i] * b[j] + b[i] * a[j]) / S(2);
    return t;
  }
};

/// Linear endomorphism; column j holds the image of e_j.
template <class S>
struct Endomorphism {
  Matrix<S> m;

  Endomorphism() = default;
  explicit Endomorphism(Matrix<S> mat) : m(std::move(mat)) {}
  static Endomorphism identity(std::size_t d) { return Endomorphism(Matrix<S>::identity(d)); }

  std::size_t dim() const { return m.rows(); }
  Vec<S> operator()(const Vec<S>& x) const { return m * x; }
  Endomorphism operator*(const Endomorphism& o) const { return Endomorphism(m * o.m); }
  bool operator==(const Endomorphism& o) const = default;
};

template <class S>
Vec<S> unit_vector(std::size_t d, std::size_t i) {
  Vec<S> v(d, S(0));
  v[i] = S(1);
  return v;
}

/// Exterior product.
template <class S>
KForm<S> wedge(const KForm<S>& a, const KForm<S>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  const std::size_t d = a.dim();
  const std::size_t p = a.degree(), q = b.degree();
  if (p + q > d) throw std::invalid_argument("wedge: total degree exceeds dimension");
  KForm<S> r(d, p + q);
  const auto ca = combinations(d, p);
  const auto cb = combinations(d, q);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (a.coeff(i) == 0) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (b.coeff(j) == 0) continue;
      Index joined = ca[i];
      joined.insert(joined.end(), cb[j].begin(), cb[j].end());
      const int s = sort_with_sign(joined);
      if (s == 0) continue;
      const S prod = a.coeff(i) * b.coeff(j);
      r[joined] += s > 0 ? prod : S(-prod);
    }
  }
  return r;
}

/// Chevalley–Eilenberg differential with dα(x, y) = -α([x, y]) on 1-forms:
///   dα(x_0..x_k) = Σ_{i<j} (-1)^{i+j} α([x_i, x_j], x_0, .., x̂_i, .., x̂_j, .., x_k).
/// A form of top degree maps to the zero form of the same degree.
template <class S>
KForm<S> ce_differential(const LieAlgebra<S>& alg, const KForm<S>& form) {
  const std::size_t d = alg.dim();
  const std::size_t k = form.degree();
  if (form.dim() != d) throw std::invalid_argument("ce_differential: dimension mismatch");
  if (k >= d) return KForm<S>(d, k);
  KForm<S> r(d, k + 1);
  if (k == 0) return r;
  const auto combos = combinations(d, k + 1);
  for (std::size_t rk = 0; rk < combos.size(); ++rk) {
    const Index& K = combos[rk];
    S acc(0);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = i + 1; j <= k; ++j) {
        Index rest;
        rest.reserve(k);
        rest.push_back(0);
        for (std::size_t m = 0; m <= k; ++m)
          if (m != i && m != j) rest.push_back(K[m]);
        S term(0);
        for (std::size_t m = 0; m < d; ++m) {
          const S& cm = alg.c(K[i], K[j], m);
          if (cm == 0) continue;
          rest[0] = m;
          term += cm * form.component(rest);
        }
        if ((i + j) % 2 == 0)
          acc += term;
        else
          acc -= term;
      }
    r.coeff(rk) = acc;
  }
  return r;
}

/// Metric duality for 1-forms and induced inner products on forms and
/// symmetric tensors, for a fixed positive definite g.
template <class S>
class MetricDuality {
 public:
  explicit MetricDuality(const SymTensor<S>& g) : g_(g) {
    if (g.symmetry_defect() > 1e-12) throw std::invalid_argument("metric is not symmetric");
    if (!is_positive_definite(g.m)) throw std::invalid_argument("metric is not positive definite");
    auto inv = inverse(g.m);
    if (!inv) throw std::invalid_argument("metric is singular");
    ginv_ = std::move(*inv);
  }

  const SymTensor<S>& metric() const { return g_; }
  const Matrix<S>& inverse_metric() const { return ginv_; }

  /// θ♯ with g(θ♯, x) = θ(x).
  Vec<S> sharp(const KForm<S>& theta) const { return ginv_ * theta.as_vector(); }
  Vec<S> sharp(const Vec<S>& theta) const { return ginv_ * theta; }

  /// x♭ = g(x, ·).
  Vec<S> flat(const Vec<S>& x) const { return g_.m * x; }

  /// ⟨α, β⟩ induced by g; basis k-forms are orthonormal when g is the identity.
  S inner(const KForm<S>& a, const KForm<S>& b) const {
    if (a.degree() != b.degree()) throw std::invalid_argument("inner product of forms of different degree");
    const std::size_t k = a.degree();
    if (k == 0) return a.coeff(0) * b.coeff(0);
    const auto combos = combinations(g_.dim(), k);
    S total(0);
    for (std::size_t i = 0; i < combos.size(); ++i) {
      if (a.coeff(i) == 0) continue;
      for (std::size_t j = 0; j < combos.size(); ++j) {
        if (b.coeff(j) == 0) continue;
        Matrix<S> sub(k, k);
        for (std::size_t p = 0; p < k; ++p)
          for (std::size_t q = 0; q < k; ++q) sub(p, q) = ginv_(combos[i][p], combos[j][q]);
        total += a.coeff(i) * b.coeff(j) * determinant(sub);
      }
    }
    return total;
  }

  S norm_sq(const KForm<S>& a) const { return inner(a, a); }

  /// Full contraction g^{ia} g^{jb} A_ij B_ab.
  S inner(const SymTensor<S>& a, const SymTensor<S>& b) const {
    const Matrix<S> x = ginv_ * a.m;
    const Matrix<S> y = ginv_ * b.m;
    S t(0);
    for (std::size_t i = 0; i < g_.dim(); ++i)
      for (std::size_t j = 0; j < g_.dim(); ++j) t += x(i, j) * y(j, i);
    return t;
  }

  S norm_sq(const SymTensor<S>& a) const { return inner(a, a); }

  /// g-trace g^{ij} T_ij.
  S trace(const SymTensor<S>& t) const {
    S r(0);
    for (std::size_t i = 0; i < g_.dim(); ++i)
      for (std::size_t j = 0; j < g_.dim(); ++j) r += ginv_(i, j) * t.m(j, i);
    return r;
  }

 private:
  SymTensor<S> g_;
  Matrix<S> ginv_;
};

/// Levi-Civita coefficients Γ^k_{ij} (∇_{e_i} e_j = Σ_k Γ^k_{ij} e_k) of a
/// left-invariant metric from the Koszul formula
///   2 g(∇_x y, z) = g([x,y], z) - g([y,z], x) + g([z,x], y).
/// Layout: gamma[(i*d + j)*d + k].
template <class S>
std::vector<S> koszul_coefficients(const LieAlgebra<S>& alg, const MetricDuality<S>& md) {
  const std::size_t d = alg.dim();
  const Matrix<S>& g = md.metric().m;
  // lowered structure constants C_{ijl} = g([e_i,e_j], e_l)
  std::vector<S> low(d * d * d, S(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        S acc(0);
        for (std::size_t m = 0; m < d; ++m) acc += alg.c(i, j, m) * g(m, l);
        low[(i * d + j) * d + l] = acc;
      }
  auto L = [&](std::size_t i, std::size_t j, std::size_t l) -> const S& { return low[(i * d + j) * d + l]; };
  std::vector<S> gamma(d * d * d, S(0));
  const S half = S(1) / S(2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec<S> lowered(d);
      for (std::size_t l = 0; l < d; ++l) lowered[l] = half * (L(i, j, l) - L(j, l, i) + L(l, i, j));
      const Vec<S> up = md.inverse_metric() * lowered;
      for (std::size_t k = 0; k < d; ++k) gamma[(i * d + j) * d + k] = up[k];
    }
  return gamma;
}

template <class S>
struct Codifferential {
  KForm<S> form;
  /// Set when the algebra is not unimodular; the result is the Riemannian
  /// codifferential of the invariant form but is not the formal adjoint of d
  /// restricted to invariant forms.
  bool adjointness_warning = false;
};

/// Riemannian codifferential of an invariant form:
///   (d*β)(x_1..x_{k-1}) = -Σ_{a,b} g^{ab} (∇_{e_a} β)(e_b, x_1, .., x_{k-1}).
template <class S>
Codifferential<S> codifferential(const LieAlgebra<S>& alg, const SymTensor<S>& g, const KForm<S>& beta) {
  const std::size_t d = alg.dim();
  const std::size_t k = beta.degree();
  MetricDuality<S> md(g);
  Codifferential<S> out{KForm<S>(d, k == 0 ? 0 : k - 1), !validate_algebra(alg).unimodular};
  if (k == 0) return out;
  const auto gamma = koszul_coefficients(alg, md);
  auto G = [&](std::size_t i, std::size_t j, std::size_t m) -> const S& { return gamma[(i * d + j) * d + m]; };
  const Matrix<S>& ginv = md.inverse_metric();
  // (∇_a β)(e_b, e_K) = -Σ_p Γ^p_{ab} β(e_p, e_K) - Σ_m Σ_p Γ^p_{a K_m} β(e_b, .., e_p, ..)
  auto nabla_beta = [&](std::size_t a, std::size_t b, const Index& K) {
    S acc(0);
    Index args(k);
    for (std::size_t m = 0; m + 1 < k; ++m) args[m + 1] = K[m];
    for (std::size_t p = 0; p < d; ++p) {
      if (G(a, b, p) == 0) continue;
      args[0] = p;
      acc -= G(a, b, p) * beta.component(args);
    }
    args[0] = b;
    for (std::size_t m = 0; m + 1 < k; ++m) {
      for (std::size_t p = 0; p < d; ++p) {
        if (G(a, K[m], p) == 0) continue;
        args[m + 1] = p;
        acc -= G(a, K[m], p) * beta.component(args);
      }
      args[m + 1] = K[m];
    }
    return acc;
  };
  const auto combos = combinations(d, k - 1);
  for (std::size_t r = 0; r < combos.size(); ++r) {
    S acc(0);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        if (ginv(a, b) == 0) continue;
        acc -= ginv(a, b) * nabla_beta(a, b, combos[r]);
      }
    out.form.coeff(r) = acc;
  }
  return out;
}

}  // namespace lckw
