#include "lckw/pointwise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lckw {

namespace {

constexpr Complex kI(0.0, 1.0);

/// Complex components of the real basis vector e_a: ∂x_j ↦ 1, ∂y_j ↦ i.
Complex basis_component(std::size_t a, std::size_t j) {
  if (a / 2 != j) return 0.0;
  return a % 2 == 0 ? Complex(1.0, 0.0) : kI;
}

double log_det(const MetricField& f, const std::vector<double>& x) {
  return std::log(std::abs(determinant(f.h(ChartPoint::from_real(x)))));
}

Matrix<double> hessian_central(const std::function<double(const std::vector<double>&)>& fn, const std::vector<double>& x,
                               double h) {
  const std::size_t m = x.size();
  Matrix<double> hess(m, m);
  const double f0 = fn(x);
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<double> xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    hess(a, a) = (fn(xp) - 2.0 * f0 + fn(xm)) / (h * h);
    for (std::size_t b = a + 1; b < m; ++b) {
      std::vector<double> pp = x, pm = x, mp = x, mm = x;
      pp[a] += h, pp[b] += h;
      pm[a] += h, pm[b] -= h;
      mp[a] -= h, mp[b] += h;
      mm[a] -= h, mm[b] -= h;
      hess(a, b) = hess(b, a) = (fn(pp) - fn(pm) - fn(mp) + fn(mm)) / (4.0 * h * h);
    }
  }
  return hess;
}

std::vector<double> central(const std::function<std::vector<double>(const std::vector<double>&)>& fn,
                            const std::vector<double>& x, std::size_t axis, double h) {
  std::vector<double> xp = x, xm = x;
  xp[axis] += h;
  xm[axis] -= h;
  const auto fp = fn(xp), fm = fn(xm);
  std::vector<double> out(fp.size());
  for (std::size_t i = 0; i < fp.size(); ++i) out[i] = (fp[i] - fm[i]) / (2.0 * h);
  return out;
}

std::vector<double> flatten(const Matrix<double>& m) {
  std::vector<double> v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

std::vector<double> form_coeffs(const KForm<double>& f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = f.coeff(i);
  return v;
}

double frob(const KForm<double>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.coeff(i) * f.coeff(i);
  return std::sqrt(s);
}

}  // namespace

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : a) m = std::max(m, std::abs(x));
  return m;
}

CMatrix operator-(const CMatrix& x, const CMatrix& y) {
  CMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

Complex determinant(CMatrix m) {
  const std::size_t n = m.n;
  Complex det(1.0, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (std::abs(m(piv, col)) == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

std::vector<double> ChartPoint::real() const {
  std::vector<double> x;
  x.reserve(2 * z.size());
  for (const auto& c : z) {
    x.push_back(c.real());
    x.push_back(c.imag());
  }
  return x;
}

ChartPoint ChartPoint::from_real(const std::vector<double>& x) {
  ChartPoint p;
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) p.z.emplace_back(x[i], x[i + 1]);
  return p;
}

MetricField ot_metric_field(std::size_t s) {
  if (s < 1) throw std::invalid_argument("ot_metric_field: s must be >= 1");
  MetricField f;
  f.name = "ot";
  f.n = s + 1;
  f.check_domain = [s](const ChartPoint& p) {
    if (p.z.size() != s + 1) throw std::domain_error("OT chart point needs s+1 coordinates");
    for (std::size_t i = 0; i < s; ++i)
      if (!(p.z[i].imag() > 0.0)) throw std::domain_error("OT chart needs Im w_i > 0");
  };
  f.local_scale = [s](const ChartPoint& p) {
    double m = p.z[0].imag();
    for (std::size_t i = 1; i < s; ++i) m = std::min(m, p.z[i].imag());
    return m;
  };
  f.h = [s](const ChartPoint& p) {
    CMatrix h(s + 1);
    double prod = 1.0;
    for (std::size_t i = 0; i < s; ++i) prod *= p.z[i].imag();
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        h(i, j) = (i == j ? 1.0 : 0.5) / (p.z[i].imag() * p.z[j].imag());
    h(s, s) = prod;
    return h;
  };
  f.ric_closed = [s](const ChartPoint& p) {
    CMatrix c(s + 1);
    for (std::size_t i = 0; i < s; ++i) {
      const double y = p.z[i].imag();
      c(i, i) = -kI / (4.0 * y * y);
    }
    return c;
  };
  f.lee_closed = [s](const ChartPoint& p) {
    std::vector<double> th(2 * (s + 1), 0.0);
    for (std::size_t i = 0; i < s; ++i) th[2 * i + 1] = 1.0 / p.z[i].imag();
    return th;
  };
  return f;
}

MetricField hopf_metric_field(std::size_t n) {
  if (n < 1) throw std::invalid_argument("hopf_metric_field: n must be >= 1");
  MetricField f;
  f.name = "hopf";
  f.n = n;
  auto norm_sq = [](const ChartPoint& p) {
    double r = 0.0;
    for (const auto& c : p.z) r += std::norm(c);
    return r;
  };
  f.check_domain = [n, norm_sq](const ChartPoint& p) {
    if (p.z.size() != n) throw std::domain_error("Hopf chart point needs n coordinates");
    if (norm_sq(p) == 0.0) throw std::domain_error("Hopf chart excludes z = 0");
  };
  f.local_scale = [norm_sq](const ChartPoint& p) { return std::sqrt(norm_sq(p)); };
  f.h = [n, norm_sq](const ChartPoint& p) {
    CMatrix h(n);
    const double r2 = norm_sq(p);
    for (std::size_t i = 0; i < n; ++i) h(i, i) = 1.0 / r2;
    return h;
  };
  f.ric_closed = [n, norm_sq](const ChartPoint& p) {
    // -i∂∂̄ log det h = i n ∂∂̄ log|z|²
    CMatrix c(n);
    const double r2 = norm_sq(p);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        c(j, k) = kI * static_cast<double>(n) * ((j == k ? r2 : 0.0) - std::conj(p.z[j]) * p.z[k]) / (r2 * r2);
    return c;
  };
  f.lee_closed = [n, norm_sq](const ChartPoint& p) {
    // θ = -d log|z|²
    std::vector<double> th(2 * n);
    const double r2 = norm_sq(p);
    for (std::size_t j = 0; j < n; ++j) {
      th[2 * j] = -2.0 * p.z[j].real() / r2;
      th[2 * j + 1] = -2.0 * p.z[j].imag() / r2;
    }
    return th;
  };
  return f;
}

Matrix<double> real_metric(const MetricField& f, const ChartPoint& p) {
  const CMatrix h = f.h(p);
  const std::size_t m = 2 * f.n;
  Matrix<double> g(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Complex acc(0.0, 0.0);
      for (std::size_t j = 0; j < f.n; ++j)
        for (std::size_t k = 0; k < f.n; ++k)
          acc += h(j, k) * basis_component(a, j) * std::conj(basis_component(b, k));
      g(a, b) = 2.0 * acc.real();
    }
  return g;
}

Matrix<double> standard_complex_structure(std::size_t n) {
  Matrix<double> j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(2 * i + 1, 2 * i) = 1.0;
    j(2 * i, 2 * i + 1) = -1.0;
  }
  return j;
}

KForm<double> real_fundamental_form(const MetricField& f, const ChartPoint& p) {
  return KForm<double>::from_matrix(standard_complex_structure(f.n).transpose() * real_metric(f, p));
}

KForm<double> complex_to_real_form(const CMatrix& c) {
  const std::size_t m = 2 * c.n;
  KForm<double> out(m, 2);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      Complex acc(0.0, 0.0);
      for (std::size_t j = 0; j < c.n; ++j)
        for (std::size_t k = 0; k < c.n; ++k)
          acc += c(j, k) * (basis_component(a, j) * std::conj(basis_component(b, k)) -
                            basis_component(b, j) * std::conj(basis_component(a, k)));
      out[Index{a, b}] = acc.real();
    }
  return out;
}

CMatrix real_to_complex_form(const KForm<double>& f) {
  const std::size_t n = f.dim() / 2;
  CMatrix c(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double xx = f.component({2 * j, 2 * k}), xy = f.component({2 * j, 2 * k + 1});
      const double yx = f.component({2 * j + 1, 2 * k}), yy = f.component({2 * j + 1, 2 * k + 1});
      c(j, k) = 0.25 * (Complex(xx + yy, 0.0) + kI * (xy - yx));
    }
  return c;
}

std::vector<double> fd_partial(const std::function<std::vector<double>(const std::vector<double>&)>& fn,
                               const std::vector<double>& x, std::size_t axis, double h) {
  const auto coarse = central(fn, x, axis, h);
  const auto fine = central(fn, x, axis, h / 2.0);
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

KForm<double> fd_exterior_derivative(const std::function<KForm<double>(const std::vector<double>&)>& field,
                                     const std::vector<double>& x, double h) {
  const KForm<double> here = field(x);
  const std::size_t d = here.dim(), k = here.degree();
  if (k >= d) return KForm<double>(d, k);
  KForm<double> out(d, k + 1);
  std::vector<std::vector<double>> partials(d);
  for (std::size_t mu = 0; mu < d; ++mu)
    partials[mu] = fd_partial([&](const std::vector<double>& y) { return form_coeffs(field(y)); }, x, mu, h);
  const auto combos = combinations(d, k + 1);
  for (std::size_t r = 0; r < combos.size(); ++r) {
    const Index& I = combos[r];
    double acc = 0.0;
    for (std::size_t m = 0; m <= k; ++m) {
      Index rest;
      for (std::size_t q = 0; q <= k; ++q)
        if (q != m) rest.push_back(I[q]);
      const double v = k == 0 ? partials[I[m]][0] : partials[I[m]][combination_rank(d, rest)];
      acc += (m % 2 == 0 ? 1.0 : -1.0) * v;
    }
    out.coeff(r) = acc;
  }
  return out;
}

PointwiseLee fd_lee_form(const MetricField& f, const ChartPoint& p, double h) {
  f.check_domain(p);
  if (f.n < 2) throw std::invalid_argument("fd_lee_form needs complex dimension >= 2");
  const std::size_t d = 2 * f.n;
  auto omega_at = [&](const std::vector<double>& x) { return real_fundamental_form(f, ChartPoint::from_real(x)); };
  const KForm<double> omega = omega_at(p.real());
  const KForm<double> domega = fd_exterior_derivative(omega_at, p.real(), h);
  const std::size_t rows = domega.size();
  Matrix<double> a(rows, d);
  for (std::size_t i = 0; i < d; ++i) {
    const KForm<double> col = wedge(KForm<double>::basis(d, {i}), omega);
    for (std::size_t r = 0; r < rows; ++r) a(r, i) = col.coeff(r);
  }
  Vec<double> b(rows);
  for (std::size_t r = 0; r < rows; ++r) b[r] = domega.coeff(r);
  const auto sol = least_squares(a, b);
  if (!sol) throw std::runtime_error("fd_lee_form: singular Lee system");
  PointwiseLee out{KForm<double>::one_form(*sol), 0.0};
  const Vec<double> fitted = a * (*sol);
  for (std::size_t r = 0; r < rows; ++r) out.residual = std::max(out.residual, std::fabs(fitted[r] - b[r]));
  return out;
}

CMatrix fd_chern_ricci(const MetricField& f, const ChartPoint& p, double h, bool richardson) {
  f.check_domain(p);
  if (!(h > 0.0) || h >= 0.5 * f.local_scale(p)) throw std::domain_error("fd_chern_ricci: step too large for the domain");
  auto fn = [&](const std::vector<double>& x) { return log_det(f, x); };
  Matrix<double> hess = hessian_central(fn, p.real(), h);
  if (richardson) {
    const Matrix<double> fine = hessian_central(fn, p.real(), h / 2.0);
    hess = (fine * 4.0 - hess) * (1.0 / 3.0);
  }
  CMatrix c(f.n);
  for (std::size_t j = 0; j < f.n; ++j)
    for (std::size_t k = 0; k < f.n; ++k) {
      // ∂_j ∂_k̄ = ¼(∂x_j - i∂y_j)(∂x_k + i∂y_k)
      const Complex ddbar = 0.25 * (Complex(hess(2 * j, 2 * k) + hess(2 * j + 1, 2 * k + 1), 0.0) +
                                    kI * (hess(2 * j, 2 * k + 1) - hess(2 * j + 1, 2 * k)));
      c(j, k) = -kI * ddbar;
    }
  return c;
}

KForm<double> fd_dj_theta(const MetricField& f, const ChartPoint& p, double h) {
  const Matrix<double> j = standard_complex_structure(f.n);
  auto jtheta_at = [&](const std::vector<double>& x) {
    const Vec<double> th = fd_lee_form(f, ChartPoint::from_real(x), h).theta.as_vector();
    Vec<double> jt(th.size(), 0.0);
    for (std::size_t i = 0; i < th.size(); ++i)
      for (std::size_t k = 0; k < th.size(); ++k) jt[i] -= th[k] * j(k, i);
    return KForm<double>::one_form(jt);
  };
  return fd_exterior_derivative(jtheta_at, p.real(), h);
}

OtModelRecord ot_model_eval(std::size_t s, const ChartPoint& p, double h) {
  const MetricField f = ot_metric_field(s);
  f.check_domain(p);
  const double step = h * f.local_scale(p);
  OtModelRecord rec;
  rec.omega = real_fundamental_form(f, p);
  rec.theta_closed = KForm<double>::one_form(f.lee_closed(p));
  const PointwiseLee lee = fd_lee_form(f, p, step);
  rec.theta_fd = lee.theta;
  rec.lee_residual = lee.residual;
  rec.ric_closed = f.ric_closed(p);
  rec.ric_fd = fd_chern_ricci(f, p, step);
  rec.half_dj_theta_fd = fd_dj_theta(f, p, step) * 0.5;
  const double scale = rec.ric_closed.max_abs();
  rec.ric_fd_rel_residual = (rec.ric_fd - rec.ric_closed).max_abs() / scale;
  const KForm<double> closed_real = complex_to_real_form(rec.ric_closed);
  rec.anchor_rel_residual = (closed_real - rec.half_dj_theta_fd).max_abs() / closed_real.max_abs();
  return rec;
}

HopfModelRecord hopf_model_eval(std::size_t n, const ChartPoint& p, double h) {
  const MetricField f = hopf_metric_field(n);
  f.check_domain(p);
  const double step = h * f.local_scale(p);
  HopfModelRecord rec;
  rec.omega = real_fundamental_form(f, p);
  rec.theta_closed = KForm<double>::one_form(f.lee_closed(p));
  const PointwiseLee lee = fd_lee_form(f, p, step);
  rec.theta_fd = lee.theta;
  rec.lee_residual = lee.residual;
  const KForm<double> ric = complex_to_real_form(fd_chern_ricci(f, p, step));
  const KForm<double> dj = fd_dj_theta(f, p, step);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ric.size(); ++i) {
    num += ric.coeff(i) * dj.coeff(i);
    den += dj.coeff(i) * dj.coeff(i);
  }
  rec.einstein_t_fd = den > 0.0 ? num / den : 0.0;
  rec.einstein_fit_residual = frob(ric - dj * rec.einstein_t_fd) / std::max(frob(ric), 1e-300);
  return rec;
}

std::vector<ChartPoint> ot_sample_points(std::size_t s, std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.5, 3.0);
  std::vector<ChartPoint> pts;
  for (std::size_t c = 0; c < count; ++c) {
    ChartPoint p;
    for (std::size_t i = 0; i < s; ++i) p.z.emplace_back(re(rng), im(rng));
    p.z.emplace_back(re(rng), re(rng));
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<double> fd_frame_christoffel(const FrameGeometry& geo, const std::vector<double>& x, double h) {
  const std::size_t d = geo.dim;
  const Matrix<double> g = geo.metric(x);
  const Matrix<double> frame = geo.frame(x);
  const std::vector<double> c = geo.brackets(x);
  // dg[a][(b*d + e)] = E_a g_be
  std::vector<std::vector<double>> dg(d, std::vector<double>(d * d, 0.0));
  std::vector<std::vector<double>> partial(geo.coords);
  for (std::size_t mu = 0; mu < geo.coords; ++mu)
    partial[mu] = fd_partial([&](const std::vector<double>& y) { return flatten(geo.metric(y)); }, x, mu, h);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t mu = 0; mu < geo.coords; ++mu) {
      if (frame(a, mu) == 0.0) continue;
      for (std::size_t q = 0; q < d * d; ++q) dg[a][q] += frame(a, mu) * partial[mu][q];
    }
  auto low = [&](std::size_t a, std::size_t b, std::size_t e) {
    double acc = 0.0;
    for (std::size_t m = 0; m < d; ++m) acc += c[(a * d + b) * d + m] * g(m, e);
    return acc;
  };
  const auto ginv = inverse(g);
  if (!ginv) throw std::runtime_error("fd_frame_christoffel: singular metric");
  std::vector<double> gamma(d * d * d, 0.0);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Vec<double> lowered(d);
      for (std::size_t e = 0; e < d; ++e)
        lowered[e] = 0.5 * (dg[a][b * d + e] + dg[b][e * d + a] - dg[e][a * d + b] + low(a, b, e) - low(b, e, a) +
                            low(e, a, b));
      const Vec<double> up = (*ginv) * lowered;
      for (std::size_t k = 0; k < d; ++k) gamma[(a * d + b) * d + k] = up[k];
    }
  return gamma;
}

Matrix<double> fd_frame_ricci(const FrameGeometry& geo, const std::vector<double>& x, double h) {
  const std::size_t d = geo.dim;
  const std::vector<double> gamma = fd_frame_christoffel(geo, x, h);
  const Matrix<double> frame = geo.frame(x);
  const std::vector<double> c = geo.brackets(x);
  std::vector<std::vector<double>> partial(geo.coords);
  for (std::size_t mu = 0; mu < geo.coords; ++mu)
    partial[mu] = fd_partial([&](const std::vector<double>& y) { return fd_frame_christoffel(geo, y, h); }, x, mu, h);
  // dgamma[a][(b*d + k)*d + p] = E_a Γ^p_{bk}
  std::vector<std::vector<double>> dgamma(d, std::vector<double>(d * d * d, 0.0));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t mu = 0; mu < geo.coords; ++mu) {
      if (frame(a, mu) == 0.0) continue;
      for (std::size_t q = 0; q < d * d * d; ++q) dgamma[a][q] += frame(a, mu) * partial[mu][q];
    }
  auto G = [&](std::size_t a, std::size_t b, std::size_t k) { return gamma[(a * d + b) * d + k]; };
  // R^p_{ijk} = E_i Γ^p_{jk} - E_j Γ^p_{ik} + Γ^m_{jk}Γ^p_{im} - Γ^m_{ik}Γ^p_{jm} - c^m_{ij}Γ^p_{mk}
  auto R = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t p) {
    double acc = dgamma[i][(j * d + k) * d + p] - dgamma[j][(i * d + k) * d + p];
    for (std::size_t m = 0; m < d; ++m)
      acc += G(j, k, m) * G(i, m, p) - G(i, k, m) * G(j, m, p) - c[(i * d + j) * d + m] * G(m, k, p);
    return acc;
  };
  Matrix<double> ric(d, d);
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t e = 0; e < d; ++e) {
      double acc = 0.0;
      for (std::size_t a = 0; a < d; ++a) acc += R(a, b, e, a);
      ric(b, e) = acc;
    }
  return ric;
}

}  // namespace lckw
