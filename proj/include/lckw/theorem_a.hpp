#pragma once

#include "lckw/connections.hpp"

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace lckw {

namespace detail {

template <class S>
double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
  return (a - b).max_abs();
}

template <class S>
bool exact_or_tol(const Matrix<S>& a, const Matrix<S>& b, double tol) {
  if constexpr (ScalarTraits<S>::exact)
    return a == b;
  else
    return max_abs_diff(a, b) < tol;
}

template <class S>
bool exact_or_tol(const S& a, const S& b, double tol) {
  return is_zero(S(a - b), tol);
}

}  // namespace detail

template <class S>
struct EinsteinFit {
  /// Set when Ric(ω) = t dJθ holds to tolerance.
  std::optional<S> t;
  /// Least-squares value even when the fit fails (0 if dJθ = 0).
  S t_ls{0};
  /// |Ric(ω) - t_ls dJθ|_g
  double residual = 0.0;
};

/// Least-squares t with Ric(ω) ≈ t dJθ in the g-norm on 2-forms.
template <class S>
EinsteinFit<S> einstein_fit(const HermitianStructure<S>& h, const LeeData<S>& lee, const RicciData<S>& ric,
                            double tol = kFloatTolerance) {
  if (lee.conformal_class != ConformalClass::StrictLcK) throw PreconditionError("einstein_fit needs a strictly lcK structure");
  MetricDuality<S> md(h.g());
  const KForm<S>& rho = ric.ricci_form;
  const KForm<S>& dj = lee.dJ_theta;
  EinsteinFit<S> fit;
  const S denom = md.norm_sq(dj);
  if (denom != 0) fit.t_ls = md.inner(rho, dj) / denom;
  const KForm<S> diff = rho - dj * fit.t_ls;
  fit.residual = std::sqrt(std::fabs(to_double(md.norm_sq(diff))));
  const bool ok = ScalarTraits<S>::exact ? diff.is_zero() : fit.residual < tol;
  if (ok) fit.t = fit.t_ls;
  return fit;
}

struct IdentityRecord {
  std::string name;
  /// Size of each side: max-abs for tensors, the value itself for scalars.
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool applicable = true;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityRecord> records;
  bool all_pass() const {
    for (const auto& r : records)
      if (r.applicable && !r.pass) return false;
    return true;
  }
  const IdentityRecord* find(const std::string& name) const {
    for (const auto& r : records)
      if (r.name == name) return &r;
    return nullptr;
  }
};

/// Everything the identity checks consume, computed once on the structure
/// rescaled to |θ| = 1.
template <class S>
struct LcKCurvatureData {
  HermitianStructure<S> h;
  LeeData<S> lee;
  InvariantConnection<S> lc;
  RicciData<S> ric_lc;
  RicciData<S> ric_w;
  RicciData<S> chern;
  NablaThetaSplit<S> nt;
  EinsteinFit<S> fit;
  bool unimodular = false;

  S n() const { return S(static_cast<long>(h.n())); }
  /// d*θ
  S codiff() const { return lee.codiff; }
};

template <class S>
LcKCurvatureData<S> lck_curvature_data(const HermitianStructure<S>& input, double tol = kFloatTolerance) {
  const LeeData<S> raw = extract_lee_form(input, tol);
  if (raw.conformal_class != ConformalClass::StrictLcK) throw PreconditionError("structure is not strictly lcK");
  HermitianStructure<S> h = normalize_lee(input, raw);
  LeeData<S> lee = extract_lee_form(h, tol);
  const InvariantConnection<S> lc = levi_civita(h);
  const InvariantConnection<S> w = weyl_connection(h, lee);
  RicciData<S> ric_lc = curvature_ricci(h, lc);
  RicciData<S> ric_w = curvature_ricci(h, w);
  RicciData<S> chern = chern_ricci_form(h);
  NablaThetaSplit<S> nt = nabla_theta_split(h, lee, lc);
  EinsteinFit<S> fit = einstein_fit(h, lee, chern, tol);
  const bool uni = validate_algebra(h.algebra(), tol).unimodular;
  return LcKCurvatureData<S>{std::move(h), std::move(lee), lc,        std::move(ric_lc), std::move(ric_w),
                             std::move(chern), std::move(nt), std::move(fit), uni};
}

namespace detail {

template <class S>
Matrix<S> outer(const Vec<S>& a) {
  return SymTensor<S>::outer(a, a).m;
}

template <class S>
IdentityRecord tensor_record(std::string name, const Matrix<S>& lhs, const Matrix<S>& rhs, double tol) {
  IdentityRecord r;
  r.name = std::move(name);
  r.lhs = lhs.max_abs();
  r.rhs = rhs.max_abs();
  r.residual = max_abs_diff(lhs, rhs);
  r.pass = exact_or_tol(lhs, rhs, tol);
  return r;
}

template <class S>
IdentityRecord scalar_record(std::string name, const S& lhs, const S& rhs, double tol) {
  IdentityRecord r;
  r.name = std::move(name);
  r.lhs = to_double(lhs);
  r.rhs = to_double(rhs);
  r.residual = std::fabs(to_double(S(lhs - rhs)));
  r.pass = exact_or_tol(lhs, rhs, tol);
  return r;
}

inline IdentityRecord not_applicable(std::string name) {
  IdentityRecord r;
  r.name = std::move(name);
  r.applicable = false;
  return r;
}

/// Symmetric tensor dJθ(·, J·) as a matrix.
template <class S>
Matrix<S> djtheta_j(const LcKCurvatureData<S>& c) {
  return c.lee.dJ_theta.as_matrix() * c.h.J().matrix();
}

/// Ric^LC predicted from the fitted t:
///   (n/2 + t)(2(∇θ)^{1,1} - |θ|²g + θ⊗θ + Jθ⊗Jθ)
///     - ½(-d*θ + (1-n)|θ|²)g - (n-1)∇θ - ½(n-1)θ⊗θ.
template <class S>
Matrix<S> ricci_lc_expansion(const LcKCurvatureData<S>& c, const S& t) {
  const S n = c.n();
  const S half = S(1) / S(2);
  const Matrix<S>& g = c.h.g().m;
  const Matrix<S> tt = outer(c.lee.theta.as_vector());
  const Matrix<S> jj = outer(c.lee.J_theta.as_vector());
  const Matrix<S> weyl_part =
      (c.nt.j_invariant.m * S(2) - g * c.lee.norm_sq + tt + jj) * S(n * half + t);
  const Matrix<S> shift = g * S(half * (-c.codiff() + (S(1) - n) * c.lee.norm_sq)) + c.nt.full.m * S(n - 1) +
                          tt * S(half * (n - 1));
  return weyl_part - shift;
}

}  // namespace detail

/// Scalars of the integrated Bochner argument, specialised to invariant data.
template <class S>
struct BochnerRecord {
  bool applicable = false;
  /// ⟨∇*∇θ, θ⟩
  S rough_laplacian_pairing{0};
  /// ‖∇θ‖²
  S nabla_theta_norm_sq{0};
  /// Ric^LC(θ♯, θ♯)
  S ricci_theta_theta{0};
  /// max of |⟨∇*∇θ,θ⟩ - ‖∇θ‖²| and |‖∇θ‖² + Ric(θ♯,θ♯)|
  double residual = 0.0;
  bool pass = false;
};

/// With dθ = 0 and d*θ = 0 on a unimodular algebra, checks
/// ⟨∇*∇θ, θ⟩ = ‖∇θ‖² and ‖∇θ‖² + Ric^LC(θ♯, θ♯) = 0.
template <class S>
BochnerRecord<S> bochner_weitzenboeck_check(const LcKCurvatureData<S>& c, double tol = kFloatTolerance) {
  BochnerRecord<S> out;
  if (!c.lee.gauduchon || !c.unimodular) return out;
  out.applicable = true;
  const std::size_t d = c.h.dim();
  MetricDuality<S> md(c.h.g());
  const Matrix<S>& ginv = md.inverse_metric();
  const Matrix<S>& T = c.nt.full.m;
  // (∇_a ∇θ)(b, e) = -T(∇_a b, e) - T(b, ∇_a e)
  Vec<S> rough(d, S(0));
  for (std::size_t e = 0; e < d; ++e) {
    S acc(0);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        if (ginv(a, b) == 0) continue;
        S nab(0);
        for (std::size_t p = 0; p < d; ++p) {
          nab -= c.lc.gamma(a, b, p) * T(p, e);
          nab -= c.lc.gamma(a, e, p) * T(b, p);
        }
        acc -= ginv(a, b) * nab;
      }
    rough[e] = acc;
  }
  const Vec<S> sharp = md.sharp(c.lee.theta);
  S pairing(0);
  for (std::size_t e = 0; e < d; ++e) pairing += rough[e] * sharp[e];
  out.rough_laplacian_pairing = pairing;
  out.nabla_theta_norm_sq = md.norm_sq(c.nt.full);
  out.ricci_theta_theta = c.ric_lc.ricci_sym.apply(sharp, sharp);
  const S r1 = out.rough_laplacian_pairing - out.nabla_theta_norm_sq;
  const S r2 = out.nabla_theta_norm_sq + out.ricci_theta_theta;
  out.residual = std::max(std::fabs(to_double(r1)), std::fabs(to_double(r2)));
  out.pass = is_zero(r1, tol) && is_zero(r2, tol);
  return out;
}

template <class S>
struct EqtCertificate {
  bool applicable = false;
  /// (n + 2t)‖(∇θ)^{1,1}‖² - n‖∇θ‖²
  S value{0};
  /// -‖∇θ‖²
  S jtheta_lhs{0};
  /// (n/2 + t) ∇θ(Jθ♯, Jθ♯)
  S jtheta_rhs{0};
};

template <class S>
EqtCertificate<S> eqt_certificate(const LcKCurvatureData<S>& c) {
  EqtCertificate<S> out;
  if (!c.lee.gauduchon || !c.fit.t) return out;
  out.applicable = true;
  const S& t = *c.fit.t;
  const S n = c.n();
  MetricDuality<S> md(c.h.g());
  const S full = md.norm_sq(c.nt.full);
  const S inv = md.norm_sq(c.nt.j_invariant);
  out.value = (n + S(2) * t) * inv - n * full;
  const Vec<S> jsharp = md.sharp(c.lee.J_theta);
  out.jtheta_lhs = -full;
  out.jtheta_rhs = (n / S(2) + t) * c.nt.full.apply(jsharp, jsharp);
  return out;
}

/// t = (n/2)(‖∇θ‖² / ‖(∇θ)^{1,1}‖² - 1). Undefined when ∇θ = 0.
template <class S>
S corollary_t(const LcKCurvatureData<S>& c, double tol = kFloatTolerance) {
  MetricDuality<S> md(c.h.g());
  const S full = md.norm_sq(c.nt.full);
  const S inv = md.norm_sq(c.nt.j_invariant);
  if (is_zero(full, tol)) throw PreconditionError("corollary_t is undefined for Vaisman structures");
  if (is_zero(inv, tol)) throw PreconditionError("corollary_t: (∇θ)^{1,1} vanishes");
  return c.n() / S(2) * (full / inv - S(1));
}

/// Invariant identities relating the Weyl, Levi-Civita and Chern curvatures
/// of a strictly lcK structure. Evaluated on the rescale with |θ| = 1.
template <class S>
IdentityReport identity_suite(const LcKCurvatureData<S>& c, double tol = kFloatTolerance) {
  using namespace detail;
  IdentityReport rep;
  const S n = c.n();
  const S half = S(1) / S(2);
  const Matrix<S>& g = c.h.g().m;
  const S nsq = c.lee.norm_sq;
  const S ds = c.codiff();
  const Matrix<S> tt = outer(c.lee.theta.as_vector());
  const Matrix<S> jj = outer(c.lee.J_theta.as_vector());

  // Ric^W(J·,·) = (n/2) dJθ + Ric(ω); compared as full matrices.
  {
    const Matrix<S> lhs = c.h.J().matrix().transpose() * c.ric_w.ricci_sym.m;
    const Matrix<S> rhs = c.lee.dJ_theta.as_matrix() * (n * half) + c.chern.ricci_form.as_matrix();
    rep.records.push_back(tensor_record("weyl_chern", lhs, rhs, tol));
  }
  // Ric^W = Ric^LC + ½(-d*θ + (1-n)|θ|²)g + (n-1)∇θ + ½(n-1)θ⊗θ
  {
    const Matrix<S> rhs = c.ric_lc.ricci_sym.m + g * S(half * (-ds + (S(1) - n) * nsq)) + c.nt.full.m * S(n - 1) +
                          tt * S(half * (n - 1));
    rep.records.push_back(tensor_record("ric_w_lc", c.ric_w.ricci_sym.m, rhs, tol));
  }
  // dJθ(·, J·) = 2(∇θ)^{1,1} - |θ|²g + θ⊗θ + Jθ⊗Jθ
  {
    const Matrix<S> rhs = c.nt.j_invariant.m * S(2) - g * nsq + tt + jj;
    rep.records.push_back(tensor_record("djtheta", djtheta_j(c), rhs, tol));
  }
  // s^W = s^LC - (2n-1)d*θ - ((2n-1)(n-1)/2)|θ|²
  {
    const S rhs = c.ric_lc.scalar - (S(2) * n - 1) * ds - (S(2) * n - 1) * (n - 1) * half * nsq;
    rep.records.push_back(scalar_record("scalar", c.ric_w.scalar, rhs, tol));
  }
  if (c.fit.t) {
    const S& t = *c.fit.t;
    // s^LC = (n-1-2t)d*θ - ((n-1)/2 + 2t(n-1))|θ|²
    const S rhs = (n - 1 - S(2) * t) * ds - ((n - 1) * half + S(2) * t * (n - 1)) * nsq;
    rep.records.push_back(scalar_record("scalar_lc", c.ric_lc.scalar, rhs, tol));
    rep.records.push_back(tensor_record("ricci_full", c.ric_lc.ricci_sym.m, ricci_lc_expansion(c, t), tol));
  } else {
    rep.records.push_back(not_applicable("scalar_lc"));
    rep.records.push_back(not_applicable("ricci_full"));
  }

  const BochnerRecord<S> bw = bochner_weitzenboeck_check(c, tol);
  if (bw.applicable) {
    IdentityRecord r;
    r.name = "bochner";
    r.lhs = to_double(bw.nabla_theta_norm_sq);
    r.rhs = 0.0 - to_double(bw.ricci_theta_theta);
    r.residual = bw.residual;
    r.pass = bw.pass;
    rep.records.push_back(r);
  } else {
    rep.records.push_back(not_applicable("bochner"));
  }

  const EqtCertificate<S> eq = eqt_certificate(c);
  if (eq.applicable) {
    rep.records.push_back(scalar_record("jtheta", eq.jtheta_lhs, eq.jtheta_rhs, tol));
    rep.records.push_back(scalar_record("eqt", eq.value, S(0), tol));
  } else {
    rep.records.push_back(not_applicable("jtheta"));
    rep.records.push_back(not_applicable("eqt"));
  }
  return rep;
}

template <class S>
IdentityReport identity_suite(const HermitianStructure<S>& h, double tol = kFloatTolerance) {
  return identity_suite(lck_curvature_data(h, tol), tol);
}

enum class TheoremVerdict {
  /// Not strictly lcK; nothing to test.
  NotApplicable,
  /// Gauduchon, t ≤ 0, Vaisman.
  Confirmed,
  /// Hypotheses not met (non-Gauduchon, no fit, or t > 0).
  Consistent,
  /// Gauduchon, t ≤ 0 and not Vaisman.
  Alarm,
};

inline const char* to_string(TheoremVerdict v) {
  switch (v) {
    case TheoremVerdict::NotApplicable:
      return "not-applicable";
    case TheoremVerdict::Confirmed:
      return "confirmed";
    case TheoremVerdict::Consistent:
      return "consistent";
    case TheoremVerdict::Alarm:
      return "alarm";
  }
  return "?";
}

template <class S>
struct TheoremAReport {
  ConformalClass conformal_class = ConformalClass::NotLcK;
  bool gauduchon = false;
  std::optional<bool> vaisman;
  /// Ric(ω) = 0
  std::optional<bool> chern_ricci_flat;
  std::optional<S> t;
  double fit_residual = 0.0;
  TheoremVerdict verdict = TheoremVerdict::NotApplicable;
  std::string summary;
};

/// Classify, fit t, and test "Gauduchon and t ≤ 0 implies Vaisman".
template <class S>
TheoremAReport<S> theorem_a_report(const HermitianStructure<S>& h, double tol = kFloatTolerance) {
  TheoremAReport<S> rep;
  const LeeData<S> raw = extract_lee_form(h, tol);
  rep.conformal_class = raw.conformal_class;
  rep.gauduchon = raw.gauduchon;
  if (raw.conformal_class == ConformalClass::Kahler) {
    rep.chern_ricci_flat = chern_ricci_form(h).ricci_form.is_zero(tol);
    rep.summary = "Kahler: theorem not applicable";
    return rep;
  }
  if (raw.conformal_class != ConformalClass::StrictLcK) {
    rep.summary = "not lcK: theorem not applicable";
    return rep;
  }
  const HermitianStructure<S> hn = normalize_lee(h, raw);
  const LeeData<S> lee = extract_lee_form(hn, tol);
  const RicciData<S> chern = chern_ricci_form(hn);
  const EinsteinFit<S> fit = einstein_fit(hn, lee, chern, tol);
  rep.vaisman = vaisman_check(hn, lee, tol);
  rep.chern_ricci_flat = chern.ricci_form.is_zero(tol);
  rep.t = fit.t;
  rep.fit_residual = fit.residual;
  const std::string gd = rep.gauduchon ? "Gauduchon" : "non-Gauduchon";
  const std::string va = *rep.vaisman ? "Vaisman" : "non-Vaisman";
  if (!fit.t) {
    rep.verdict = TheoremVerdict::Consistent;
    rep.summary = gd + ", no Einstein fit, " + va + ": consistent (hypothesis not met)";
    return rep;
  }
  const double t = to_double(*fit.t);
  const bool t_nonpos = ScalarTraits<S>::exact ? !(*fit.t > 0) : t <= tol;
  char tbuf[64];
  std::snprintf(tbuf, sizeof tbuf, "%.12g", t);
  if (rep.gauduchon && t_nonpos) {
    rep.verdict = *rep.vaisman ? TheoremVerdict::Confirmed : TheoremVerdict::Alarm;
    rep.summary = gd + ", t=" + tbuf + ", " + va +
                  (*rep.vaisman ? ": theorem instance confirmed" : ": COUNTEREXAMPLE ALARM");
  } else {
    rep.verdict = TheoremVerdict::Consistent;
    rep.summary = gd + ", t=" + tbuf + ", " + va + ": consistent (hypothesis not met)";
  }
  return rep;
}

}  // namespace lckw
