#pragma once

#include "lckw/connections.hpp"

#include <utility>
#include <vector>

namespace lckw {

/// Contact metric data (η, ξ, Φ, g_S) on an odd-dimensional metric Lie
/// algebra. Validity is not enforced on construction; see check_sasaki().
template <class S>
struct SasakiStructure {
  LieAlgebra<S> alg;
  SymTensor<S> g_S;
  KForm<S> eta;
  Vec<S> xi;
  Endomorphism<S> Phi;

  std::size_t dim() const { return alg.dim(); }
  /// Complex dimension of the Kähler cone: dim = 2n - 1.
  std::size_t n() const { return (alg.dim() + 1) / 2; }

  template <class T>
  SasakiStructure<T> cast() const {
    SasakiStructure<T> out;
    out.alg = alg.template cast<T>();
    out.g_S = SymTensor<T>(g_S.m.template cast<T>());
    out.eta = eta.template cast<T>();
    out.Phi = Endomorphism<T>(Phi.m.template cast<T>());
    for (const auto& x : xi) {
      if constexpr (std::is_same_v<T, double>)
        out.xi.push_back(to_double(x));
      else
        out.xi.push_back(T(x));
    }
    return out;
  }
};

struct SasakiCheck {
  double eta_xi = 0.0;        ///< |η(ξ) - 1|
  double xi_norm = 0.0;       ///< |g_S(ξ, ξ) - 1|
  double phi_square = 0.0;    ///< max |Φ² + Id - ξ⊗η|
  double metric = 0.0;        ///< max |g_S - η⊗η - ½ dη(·, Φ·)|
  double normality = 0.0;     ///< max |N_Φ + dη⊗ξ|
  bool pass = false;
};

template <class S>
SasakiCheck check_sasaki(const SasakiStructure<S>& s, double tol = kFloatTolerance) {
  const std::size_t d = s.dim();
  if (d % 2 != 1) throw ValidationError("sasaki", "Sasaki algebra must be odd-dimensional");
  if (s.g_S.dim() != d || s.Phi.dim() != d || s.xi.size() != d || s.eta.degree() != 1 || s.eta.dim() != d)
    throw ValidationError("shape", "Sasaki data dimensions do not match the algebra");
  SasakiCheck out;
  const Vec<S> eta = s.eta.as_vector();
  S eta_xi(0);
  for (std::size_t i = 0; i < d; ++i) eta_xi += eta[i] * s.xi[i];
  out.eta_xi = std::fabs(to_double(S(eta_xi - 1)));
  out.xi_norm = std::fabs(to_double(S(s.g_S.apply(s.xi, s.xi) - 1)));
  Matrix<S> xi_eta(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) xi_eta(i, j) = s.xi[i] * eta[j];
  out.phi_square = (s.Phi.m * s.Phi.m + Matrix<S>::identity(d) - xi_eta).max_abs();
  const Matrix<S> deta = ce_differential(s.alg, s.eta).as_matrix();
  Matrix<S> rhs = deta * s.Phi.m * (S(1) / S(2));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) rhs(i, j) += eta[i] * eta[j];
  out.metric = (s.g_S.m - rhs).max_abs();
  // N_Φ(x,y) = Φ²[x,y] + [Φx,Φy] - Φ[Φx,y] - Φ[x,Φy]
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      const Vec<S> x = unit_vector<S>(d, a), y = unit_vector<S>(d, b);
      const Vec<S> px = s.Phi(x), py = s.Phi(y);
      const Vec<S> t1 = s.Phi(s.Phi(s.alg.bracket(x, y)));
      const Vec<S> t2 = s.alg.bracket(px, py);
      const Vec<S> t3 = s.Phi(s.alg.bracket(px, y));
      const Vec<S> t4 = s.Phi(s.alg.bracket(x, py));
      for (std::size_t k = 0; k < d; ++k)
        out.normality =
            std::max(out.normality, std::fabs(to_double(S(t1[k] + t2[k] - t3[k] - t4[k] + deta(a, b) * s.xi[k]))));
    }
  out.pass = out.eta_xi < tol && out.xi_norm < tol && out.phi_square < tol && out.metric < tol && out.normality < tol &&
             validate_algebra(s.alg, tol).jacobi;
  return out;
}

/// h_{2k+1} with [X_i, Y_i] = 2ξ, orthonormal basis (X_1..X_k, Y_1..Y_k, ξ),
/// η = ξ^*, ΦX_i = -Y_i, ΦY_i = X_i. k = 1 is the standard h₃.
template <class S>
SasakiStructure<S> heisenberg_sasaki(std::size_t k = 1) {
  if (k < 1) throw std::invalid_argument("heisenberg_sasaki: k must be >= 1");
  const std::size_t d = 2 * k + 1;
  SasakiStructure<S> s;
  s.alg = LieAlgebra<S>(d);
  for (std::size_t i = 0; i < k; ++i) s.alg.add_bracket_term(i, k + i, d - 1, S(2));
  s.g_S = SymTensor<S>(Matrix<S>::identity(d));
  s.eta = KForm<S>::basis(d, {d - 1});
  s.xi = unit_vector<S>(d, d - 1);
  Matrix<S> phi(d, d);
  for (std::size_t i = 0; i < k; ++i) {
    phi(k + i, i) = S(-1);
    phi(i, k + i) = S(1);
  }
  s.Phi = Endomorphism<S>(phi);
  return s;
}

/// su(2) with [e_1, e_2] = 2e_3 and cyclic, the round unit 3-sphere; ξ = e_3.
template <class S>
SasakiStructure<S> sphere_sasaki() {
  SasakiStructure<S> s;
  s.alg = LieAlgebra<S>(3);
  s.alg.add_bracket_term(0, 1, 2, S(2));
  s.alg.add_bracket_term(1, 2, 0, S(2));
  s.alg.add_bracket_term(0, 2, 1, S(-2));
  s.g_S = SymTensor<S>(Matrix<S>::identity(3));
  s.eta = KForm<S>::basis(3, {2});
  s.xi = unit_vector<S>(3, 2);
  Matrix<S> phi(3, 3);
  phi(1, 0) = S(-1);
  phi(0, 1) = S(1);
  s.Phi = Endomorphism<S>(phi);
  return s;
}

template <class S>
struct EtaEinsteinFit {
  S alpha{0};
  S beta{0};
  /// |Ric - αg_S - βη⊗η|_{g_S}
  double residual = 0.0;
  /// α + β - (2n - 2)
  S sum_defect{0};
  bool pass = false;
};

/// Least-squares (α, β) with Ric_{g_S} ≈ α g_S + β η⊗η in the g_S norm.
template <class S>
EtaEinsteinFit<S> eta_einstein_fit(const SasakiStructure<S>& s, double tol = kFloatTolerance) {
  MetricDuality<S> md(s.g_S);
  const Curvature<S> curv(s.alg, levi_civita(s.alg, s.g_S));
  const SymTensor<S> ric(curv.ricci());
  const Vec<S> eta = s.eta.as_vector();
  const SymTensor<S> ee = SymTensor<S>::outer(eta, eta);
  const S a11 = md.inner(s.g_S, s.g_S), a12 = md.inner(s.g_S, ee), a22 = md.inner(ee, ee);
  const S b1 = md.inner(ric, s.g_S), b2 = md.inner(ric, ee);
  Matrix<S> a(2, 2);
  a(0, 0) = a11;
  a(0, 1) = a12;
  a(1, 0) = a12;
  a(1, 1) = a22;
  const auto sol = solve(a, Vec<S>{b1, b2});
  if (!sol) throw std::runtime_error("eta_einstein_fit: g_S and η⊗η are dependent");
  EtaEinsteinFit<S> out;
  out.alpha = (*sol)[0];
  out.beta = (*sol)[1];
  const SymTensor<S> diff = ric - s.g_S * out.alpha - ee * out.beta;
  out.residual = std::sqrt(std::fabs(to_double(md.norm_sq(diff))));
  out.sum_defect = out.alpha + out.beta - S(static_cast<long>(2 * s.n() - 2));
  out.pass = ScalarTraits<S>::exact ? diff.m == Matrix<S>(s.dim(), s.dim()) : out.residual < tol;
  return out;
}

/// (α, β) = (-(2 + 4t), 2n + 4t).
template <class S>
std::pair<S, S> vaisman_sasaki_constants(const S& t, std::size_t n) {
  const S nn(static_cast<long>(n));
  return {-(S(2) + S(4) * t), S(2) * nn + S(4) * t};
}

/// Sasaki structure on ker θ of a Vaisman structure, after rescaling to
/// |θ| = 1: g_S = ¼ g|_K, η = -½ Jθ|_K, ξ = -2 (Jθ)♯, Φx = Jx - θ(Jx)θ♯.
/// The factor ¼ is the one making dr² + r² g_S the Kähler cone of the
/// rescaled metric. K gets the basis e_i - (θ_i/θ_p) e_p for i ≠ p, where p
/// is the first index with θ_p ≠ 0.
template <class S>
SasakiStructure<S> sasaki_from_vaisman(const HermitianStructure<S>& h, double tol = kFloatTolerance) {
  const LeeData<S> raw = extract_lee_form(h, tol);
  if (raw.conformal_class != ConformalClass::StrictLcK) throw PreconditionError("sasaki_from_vaisman needs a strictly lcK structure");
  if (!vaisman_check(h, raw, tol)) throw PreconditionError("sasaki_from_vaisman needs a Vaisman structure");
  const HermitianStructure<S> hn = normalize_lee(h, raw);
  const LeeData<S> lee = extract_lee_form(hn, tol);
  const std::size_t d = hn.dim();
  const Vec<S> th = lee.theta.as_vector();
  std::size_t p = d;
  for (std::size_t i = 0; i < d && p == d; ++i)
    if (!is_zero(th[i], tol)) p = i;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d; ++i)
    if (i != p) keep.push_back(i);
  const std::size_t m = d - 1;
  std::vector<Vec<S>> basis;
  for (std::size_t i : keep) {
    Vec<S> v = unit_vector<S>(d, i);
    v[p] = -th[i] / th[p];
    basis.push_back(v);
  }
  auto coords = [&](const Vec<S>& x) {
    Vec<S> c(m);
    for (std::size_t a = 0; a < m; ++a) c[a] = x[keep[a]];
    return c;
  };
  MetricDuality<S> md(hn.g());
  SasakiStructure<S> s;
  s.alg = LieAlgebra<S>(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const Vec<S> c = coords(hn.algebra().bracket(basis[a], basis[b]));
      for (std::size_t k = 0; k < m; ++k)
        if (c[k] != 0) s.alg.add_bracket_term(a, b, k, c[k]);
    }
  Matrix<S> gs(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) gs(a, b) = hn.g().apply(basis[a], basis[b]) / S(4);
  s.g_S = SymTensor<S>(gs);
  const Vec<S> jt = lee.J_theta.as_vector();
  Vec<S> eta(m);
  for (std::size_t a = 0; a < m; ++a) {
    S acc(0);
    for (std::size_t i = 0; i < d; ++i) acc += jt[i] * basis[a][i];
    eta[a] = -acc / S(2);
  }
  s.eta = KForm<S>::one_form(eta);
  Vec<S> xi = md.sharp(jt);
  for (auto& x : xi) x *= S(-2);
  s.xi = coords(xi);
  const Vec<S> th_sharp = md.sharp(th);
  Matrix<S> phi(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    Vec<S> jx = hn.J().apply(basis[a]);
    S t(0);
    for (std::size_t i = 0; i < d; ++i) t += th[i] * jx[i];
    for (std::size_t i = 0; i < d; ++i) jx[i] -= t * th_sharp[i];
    const Vec<S> c = coords(jx);
    for (std::size_t k = 0; k < m; ++k) phi(k, a) = c[k];
  }
  s.Phi = Endomorphism<S>(phi);
  return s;
}

struct ConeCheck {
  std::vector<double> radii;
  /// max over basis pairs of |Ric_S - Ric(ω̃)(·, Φ·) - (2n-2) g_S| per radius.
  std::vector<double> residuals;
  double max_residual = 0.0;
};

/// Builds the cone metric dr² + r² g_S in the frame (∂_r, E_i), computes its
/// Ricci tensor by finite differences, forms the Ricci form Ric̃(J̃·,·) with
/// J̃ = Φ on ker η and J̃ξ = -r∂_r, and compares Ric̃(J̃X, ΦY) + (2n-2)g_S with
/// the exact Ric_{g_S} on S. Throws std::domain_error for r ≤ 0.
ConeCheck cone_consistency_check(const SasakiStructure<double>& s, const std::vector<double>& radii, double h = 1e-3);

}  // namespace lckw
