#pragma once

#include "lckw/errors.hpp"
#include "lckw/forms.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace lckw {

/// Almost complex structure on the Lie algebra (checked J² = -Id). J acts
/// on 1-forms by (Jα)(x) = -α(Jx).
template <class S>
class ComplexStructure {
 public:
  ComplexStructure() = default;
  explicit ComplexStructure(Endomorphism<S> j, double tol = kFloatTolerance) : j_(std::move(j)) {
    const std::size_t d = j_.dim();
    if (d % 2 != 0) throw ValidationError("almost-complex", "odd dimension");
    const Matrix<S> sq = j_.m * j_.m + Matrix<S>::identity(d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        if (!is_zero(sq(a, b), tol)) throw ValidationError("almost-complex", "J^2 != -Id");
  }

  const Endomorphism<S>& endo() const { return j_; }
  const Matrix<S>& matrix() const { return j_.m; }
  std::size_t dim() const { return j_.dim(); }

  Vec<S> apply(const Vec<S>& x) const { return j_.m * x; }

  Vec<S> apply_to_form(const Vec<S>& alpha) const {
    const std::size_t d = dim();
    Vec<S> r(d, S(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) r[i] -= alpha[k] * j_.m(k, i);
    return r;
  }

  KForm<S> apply_to_form(const KForm<S>& alpha) const { return KForm<S>::one_form(apply_to_form(alpha.as_vector())); }

 private:
  Endomorphism<S> j_;
};

/// Max component of N(x,y) = [Jx,Jy] - [x,y] - J[Jx,y] - J[x,Jy] over basis
/// pairs; zero iff J is integrable.
template <class S>
double nijenhuis_check(const LieAlgebra<S>& alg, const ComplexStructure<S>& j) {
  const std::size_t d = alg.dim();
  if (j.dim() != d) throw std::invalid_argument("nijenhuis_check: dimension mismatch");
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      const Vec<S> x = unit_vector<S>(d, a), y = unit_vector<S>(d, b);
      const Vec<S> jx = j.apply(x), jy = j.apply(y);
      const Vec<S> t1 = alg.bracket(jx, jy);
      const Vec<S> t2 = alg.bracket(x, y);
      const Vec<S> t3 = j.apply(alg.bracket(jx, y));
      const Vec<S> t4 = j.apply(alg.bracket(x, jy));
      for (std::size_t k = 0; k < d; ++k) worst = std::max(worst, std::fabs(to_double(S(t1[k] - t2[k] - t3[k] - t4[k]))));
    }
  return worst;
}

/// Left-invariant Hermitian structure (g, J) on a Lie algebra with fundamental
/// form ω(x, y) = g(Jx, y). Construction validates J² = -Id, symmetry and
/// positivity of g, and g(J·, J·) = g.
template <class S>
class HermitianStructure {
 public:
  HermitianStructure() = default;
  HermitianStructure(LieAlgebra<S> alg, ComplexStructure<S> j, SymTensor<S> g, double tol = kFloatTolerance)
      : alg_(std::move(alg)), j_(std::move(j)), g_(std::move(g)) {
    const std::size_t d = alg_.dim();
    if (j_.dim() != d || g_.dim() != d) throw ValidationError("shape", "J and g must match the algebra dimension");
    if (g_.symmetry_defect() > tol) throw ValidationError("metric", "g is not symmetric");
    if (!is_positive_definite(g_.m)) throw ValidationError("metric", "g is not positive definite");
    const Matrix<S> pulled = j_.matrix().transpose() * g_.m * j_.matrix();
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        if (!is_zero(S(pulled(a, b) - g_.m(a, b)), tol))
          throw ValidationError("compatibility", "g(J., J.) != g");
    omega_ = KForm<S>::from_matrix(j_.matrix().transpose() * g_.m);
  }

  const LieAlgebra<S>& algebra() const { return alg_; }
  const ComplexStructure<S>& J() const { return j_; }
  const SymTensor<S>& g() const { return g_; }
  const KForm<S>& omega() const { return omega_; }
  std::size_t dim() const { return alg_.dim(); }
  /// Complex dimension.
  std::size_t n() const { return alg_.dim() / 2; }

  /// Same algebra and J, metric multiplied by the constant c > 0.
  HermitianStructure scaled(const S& c) const { return HermitianStructure(alg_, j_, g_ * c); }

  template <class T>
  HermitianStructure<T> cast() const {
    return HermitianStructure<T>(alg_.template cast<T>(), ComplexStructure<T>(Endomorphism<T>(j_.matrix().template cast<T>())),
                                 SymTensor<T>(g_.m.template cast<T>()));
  }

 private:
  LieAlgebra<S> alg_;
  ComplexStructure<S> j_;
  SymTensor<S> g_;
  KForm<S> omega_;
};

/// Fundamental form ω(x, y) = g(Jx, y).
template <class S>
KForm<S> fundamental_form(const HermitianStructure<S>& h) {
  return h.omega();
}

enum class ConformalClass { Kahler, GloballyConformallyKahler, StrictLcK, NotLcK };

inline const char* to_string(ConformalClass c) {
  switch (c) {
    case ConformalClass::Kahler:
      return "Kahler";
    case ConformalClass::GloballyConformallyKahler:
      return "GloballyConformallyKahler";
    case ConformalClass::StrictLcK:
      return "StrictLcK";
    case ConformalClass::NotLcK:
      return "NotLcK";
  }
  return "?";
}

template <class S>
struct LeeData {
  KForm<S> theta;
  KForm<S> J_theta;
  KForm<S> dJ_theta;
  S norm_sq{0};
  /// d*θ (Riemannian codifferential).
  S codiff{0};
  ConformalClass conformal_class = ConformalClass::NotLcK;
  bool gauduchon = false;
  /// max |dω - θ∧ω| for the fitted θ.
  double lee_residual = 0.0;
  /// max |dθ|
  double closedness_residual = 0.0;
};

/// Solves dω = θ∧ω for an invariant 1-form θ and classifies the structure.
/// The map θ ↦ θ∧ω is injective for n ≥ 2, so θ is unique when it exists.
/// In float mode the system is solved in the least-squares sense and declared
/// inconsistent when the residual exceeds 1e-8·|dω|.
template <class S>
LeeData<S> extract_lee_form(const HermitianStructure<S>& h, double tol = kFloatTolerance) {
  const std::size_t d = h.dim();
  if (d < 4) throw PreconditionError("extract_lee_form needs real dimension >= 4");
  const LieAlgebra<S>& alg = h.algebra();
  const KForm<S>& omega = h.omega();
  const KForm<S> domega = ce_differential(alg, omega);

  const std::size_t rows = domega.size();
  Matrix<S> a(rows, d);
  for (std::size_t i = 0; i < d; ++i) {
    const KForm<S> col = wedge(KForm<S>::basis(d, {i}), omega);
    for (std::size_t r = 0; r < rows; ++r) a(r, i) = col.coeff(r);
  }
  Vec<S> b(rows);
  for (std::size_t r = 0; r < rows; ++r) b[r] = domega.coeff(r);

  LeeData<S> lee;
  auto sol = least_squares(a, b);
  if (!sol) throw std::runtime_error("extract_lee_form: θ ↦ θ∧ω is not injective (degenerate ω?)");
  lee.theta = KForm<S>::one_form(*sol);
  const Vec<S> fitted = a * (*sol);
  bool consistent = true;
  double res2 = 0.0, rhs2 = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const S diff = fitted[r] - b[r];
    if (diff != 0) consistent = false;
    const double dd = to_double(diff);
    res2 += dd * dd;
    rhs2 += std::pow(to_double(b[r]), 2);
    lee.lee_residual = std::max(lee.lee_residual, std::fabs(dd));
  }
  if constexpr (!ScalarTraits<S>::exact) consistent = std::sqrt(res2) <= 1e-8 * std::sqrt(rhs2) || std::sqrt(res2) < 1e-12;

  const KForm<S> dtheta = ce_differential(alg, lee.theta);
  lee.closedness_residual = dtheta.max_abs();
  const bool closed = dtheta.is_zero(tol);

  MetricDuality<S> md(h.g());
  lee.J_theta = h.J().apply_to_form(lee.theta);
  lee.dJ_theta = ce_differential(alg, lee.J_theta);
  lee.norm_sq = md.norm_sq(lee.theta);
  lee.codiff = codifferential(alg, h.g(), lee.theta).form.coeff(0);
  lee.gauduchon = is_zero(lee.codiff, tol);

  if (!consistent || !closed)
    lee.conformal_class = ConformalClass::NotLcK;
  else if (lee.theta.is_zero(tol))
    lee.conformal_class = ConformalClass::Kahler;
  else
    // An invariant exact 1-form on a Lie algebra is zero, so a nonzero
    // invariant Lee form is never globally exact here.
    lee.conformal_class = ConformalClass::StrictLcK;
  return lee;
}

/// Tests |θ|² ω = θ∧Jθ - dJθ (the lcK-with-potential shape). nullopt when the
/// structure is not strictly lcK.
template <class S>
std::optional<bool> potential_form_check(const HermitianStructure<S>& h, const LeeData<S>& lee,
                                         double tol = kFloatTolerance) {
  if (lee.conformal_class != ConformalClass::StrictLcK) return std::nullopt;
  const KForm<S> lhs = h.omega() * lee.norm_sq;
  const KForm<S> rhs = wedge(lee.theta, lee.J_theta) - lee.dJ_theta;
  return (lhs - rhs).is_zero(tol);
}

/// Constant conformal rescale making |θ| = 1 (g ↦ |θ|² g). No square roots
/// are needed, so it stays exact in rational mode. Returns h unchanged if θ = 0.
template <class S>
HermitianStructure<S> normalize_lee(const HermitianStructure<S>& h, const LeeData<S>& lee) {
  if (lee.theta.is_zero()) return h;
  return h.scaled(lee.norm_sq);
}

}  // namespace lckw
