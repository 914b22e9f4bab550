#include "lckw/pointwise.hpp"
#include "lckw/sasaki.hpp"

#include <stdexcept>

namespace lckw {

ConeCheck cone_consistency_check(const SasakiStructure<double>& s, const std::vector<double>& radii, double h) {
  if (!check_sasaki(s).pass) throw ValidationError("sasaki", "cone check needs a valid Sasaki structure");
  const std::size_t m = s.dim();
  const std::size_t d = m + 1;
  const double two_n_minus_2 = static_cast<double>(2 * s.n() - 2);

  FrameGeometry cone;
  cone.dim = d;
  cone.coords = 1;
  cone.metric = [&](const std::vector<double>& x) {
    const double r = x[0];
    Matrix<double> g(d, d);
    g(0, 0) = 1.0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) g(1 + a, 1 + b) = r * r * s.g_S(a, b);
    return g;
  };
  std::vector<double> c(d * d * d, 0.0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t k = 0; k < m; ++k) c[((1 + a) * d + 1 + b) * d + 1 + k] = s.alg.c(a, b, k);
  cone.brackets = [c](const std::vector<double>&) { return c; };
  cone.frame = [d](const std::vector<double>&) {
    Matrix<double> f(d, 1);
    f(0, 0) = 1.0;
    return f;
  };

  const Matrix<double> ric_s = Curvature<double>(s.alg, levi_civita(s.alg, s.g_S)).ricci();
  const Vec<double> eta = s.eta.as_vector();

  ConeCheck out;
  for (double r : radii) {
    if (!(r > 0.0)) throw std::domain_error("cone_consistency_check: radii must be positive");
    const Matrix<double> ric = fd_frame_ricci(cone, {r}, h * r);
    // J̃ on the cone frame: column a+1 is J̃E_a = ΦE_a - η(E_a) r∂_r.
    Matrix<double> jt(d, d);
    for (std::size_t k = 0; k < m; ++k) jt(1 + k, 0) = s.xi[k] / r;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t k = 0; k < m; ++k) jt(1 + k, 1 + a) = s.Phi.m(k, a);
      jt(0, 1 + a) = -eta[a] * r;
    }
    // ρ̃(X, Y) = Ric̃(J̃X, Y)
    const Matrix<double> rho = jt.transpose() * ric;
    double worst = 0.0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        double rho_phi = 0.0;
        for (std::size_t k = 0; k < m; ++k) rho_phi += rho(1 + a, 1 + k) * s.Phi.m(k, b);
        worst = std::max(worst, std::fabs(ric_s(a, b) - rho_phi - two_n_minus_2 * s.g_S(a, b)));
      }
    out.radii.push_back(r);
    out.residuals.push_back(worst);
    out.max_residual = std::max(out.max_residual, worst);
  }
  return out;
}

}  // namespace lckw
