#pragma once

#include "lckw/forms.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace lckw {

using Complex = std::complex<double>;

/// Dense complex square matrix (row-major).
struct CMatrix {
  std::size_t n = 0;
  std::vector<Complex> a;

  CMatrix() = default;
  explicit CMatrix(std::size_t size) : n(size), a(size * size, Complex(0.0, 0.0)) {}
  Complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double max_abs() const;
};

CMatrix operator-(const CMatrix& x, const CMatrix& y);
Complex determinant(CMatrix m);

/// Point of a complex chart, z_1..z_n.
struct ChartPoint {
  std::vector<Complex> z;

  /// Real coordinates (Re z_1, Im z_1, Re z_2, ...).
  std::vector<double> real() const;
  static ChartPoint from_real(const std::vector<double>& x);
};

/// Hermitian metric on an open set of ℂ^n with ω = i Σ h_{jk̄} dz_j ∧ dz̄_k.
struct MetricField {
  std::string name;
  std::size_t n = 0;
  /// Throws std::domain_error outside the domain.
  std::function<void(const ChartPoint&)> check_domain;
  /// Largest admissible finite-difference step around p.
  std::function<double(const ChartPoint&)> local_scale;
  std::function<CMatrix(const ChartPoint&)> h;
  /// Closed-form Chern–Ricci coefficients C with Ric(ω) = Σ C_{jk} dz_j ∧ dz̄_k; may be empty.
  std::function<CMatrix(const ChartPoint&)> ric_closed;
  /// Closed-form Lee form in real coordinates; may be empty.
  std::function<std::vector<double>(const ChartPoint&)> lee_closed;
};

/// ω = Σ i(1+δ_ij)/2 dw_i∧dw̄_j/(Im w_i Im w_j) + i(Π Im w) dz∧dz̄ on ℍ^s × ℂ,
/// coordinates (w_1..w_s, z).
MetricField ot_metric_field(std::size_t s);

/// ω = |z|^{-2} Σ i dz_j ∧ dz̄_j on ℂ^n ∖ {0}.
MetricField hopf_metric_field(std::size_t n);

/// Real metric g(u, v) = 2 Re Σ h_{jk̄} u^j ū^k in the basis ∂x_1, ∂y_1, ...
Matrix<double> real_metric(const MetricField& f, const ChartPoint& p);
/// Standard complex structure J ∂x_j = ∂y_j.
Matrix<double> standard_complex_structure(std::size_t n);
/// ω(u, v) = g(Ju, v) as a real 2-form.
KForm<double> real_fundamental_form(const MetricField& f, const ChartPoint& p);
/// Real 2-form Σ C_{jk} dz_j ∧ dz̄_k (real part).
KForm<double> complex_to_real_form(const CMatrix& c);
/// Complex coefficients C_{jk} of a real 2-form of type (1,1).
CMatrix real_to_complex_form(const KForm<double>& f);

/// Derivative of a vector-valued function along coordinate `axis`, central
/// difference with one Richardson step (error O(h^4)).
std::vector<double> fd_partial(const std::function<std::vector<double>(const std::vector<double>&)>& fn,
                               const std::vector<double>& x, std::size_t axis, double h);

/// Exterior derivative of a form field in real coordinates.
KForm<double> fd_exterior_derivative(const std::function<KForm<double>(const std::vector<double>&)>& field,
                                     const std::vector<double>& x, double h);

struct PointwiseLee {
  KForm<double> theta;
  /// max |dω - θ∧ω| for the fitted θ.
  double residual = 0.0;
};

/// Solves dω = θ∧ω at p with dω by finite differences.
PointwiseLee fd_lee_form(const MetricField& f, const ChartPoint& p, double h);

/// -i ∂∂̄ log det h by central second differences: coefficients C_{jk} on
/// dz_j ∧ dz̄_k. One Richardson step unless `richardson` is false.
CMatrix fd_chern_ricci(const MetricField& f, const ChartPoint& p, double h, bool richardson = true);

/// dJθ at p with θ extracted pointwise at neighbouring points.
KForm<double> fd_dj_theta(const MetricField& f, const ChartPoint& p, double h);

struct OtModelRecord {
  KForm<double> omega;
  KForm<double> theta_closed;
  KForm<double> theta_fd;
  CMatrix ric_closed;
  CMatrix ric_fd;
  KForm<double> half_dj_theta_fd;
  double lee_residual = 0.0;
  /// |ric_fd - ric_closed| / |ric_closed|
  double ric_fd_rel_residual = 0.0;
  /// |ric_closed - ½dJθ_fd| / |ric_closed| as real 2-forms
  double anchor_rel_residual = 0.0;
};

OtModelRecord ot_model_eval(std::size_t s, const ChartPoint& p, double h = 1e-3);

struct HopfModelRecord {
  KForm<double> omega;
  KForm<double> theta_closed;
  KForm<double> theta_fd;
  double lee_residual = 0.0;
  /// Least-squares t with Ric_fd = t dJθ_fd at p.
  double einstein_t_fd = 0.0;
  double einstein_fit_residual = 0.0;
};

HopfModelRecord hopf_model_eval(std::size_t n, const ChartPoint& p, double h = 1e-3);

/// Uniform random points in a box well inside the OT domain.
std::vector<ChartPoint> ot_sample_points(std::size_t s, std::size_t count, unsigned seed);

/// Riemannian geometry given by a frame E_0..E_{d-1} over a coordinate
/// patch ℝ^q: metric coefficients g(E_a, E_b)(x), brackets [E_a, E_b](x) and
/// the action of E_a on functions, E_a f = Σ_μ frame(x)(a, μ) ∂_μ f.
/// Curvature is computed from the frame Koszul formula with every derivative
/// taken by finite differences.
struct FrameGeometry {
  std::size_t dim = 0;
  std::size_t coords = 0;
  std::function<Matrix<double>(const std::vector<double>&)> metric;
  /// c[(a*d + b)*d + k] with [E_a, E_b] = Σ_k c^k_{ab} E_k.
  std::function<std::vector<double>(const std::vector<double>&)> brackets;
  std::function<Matrix<double>(const std::vector<double>&)> frame;
};

/// Γ^k_{ab} at x, layout (a*d + b)*d + k.
std::vector<double> fd_frame_christoffel(const FrameGeometry& geo, const std::vector<double>& x, double h);
/// Ric(E_a, E_b) = tr(z ↦ R(z, E_a) E_b) at x.
Matrix<double> fd_frame_ricci(const FrameGeometry& geo, const std::vector<double>& x, double h);

}  // namespace lckw
