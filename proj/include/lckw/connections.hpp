#pragma once

#include "lckw/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lckw {

enum class ConnectionKind { LeviCivita, Weyl, Chern };

/// Left-invariant connection: ∇_{e_i} e_j = Σ_k Γ^k_{ij} e_k.
template <class S>
class InvariantConnection {
 public:
  InvariantConnection() = default;
  InvariantConnection(std::size_t dim, std::vector<S> gamma, ConnectionKind kind)
      : dim_(dim), gamma_(std::move(gamma)), kind_(kind) {
    if (gamma_.size() != dim_ * dim_ * dim_) throw std::invalid_argument("connection coefficient array has wrong size");
  }

  std::size_t dim() const { return dim_; }
  ConnectionKind kind() const { return kind_; }
  const S& gamma(std::size_t i, std::size_t j, std::size_t k) const { return gamma_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<S>& coefficients() const { return gamma_; }

  /// ∇_x y for invariant vector fields x, y.
  Vec<S> nabla(const Vec<S>& x, const Vec<S>& y) const {
    Vec<S> r(dim_, S(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j] == 0) continue;
        const S w = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k) r[k] += w * gamma(i, j, k);
      }
    }
    return r;
  }

  /// Matrix of y ↦ ∇_{e_i} y.
  Matrix<S> nabla_matrix(std::size_t i) const {
    Matrix<S> m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) = gamma(i, j, k);
    return m;
  }

  /// max |Γ - Γ'| componentwise.
  double distance(const InvariantConnection& o) const {
    double m = 0.0;
    for (std::size_t i = 0; i < gamma_.size(); ++i) m = std::max(m, std::fabs(to_double(S(gamma_[i] - o.gamma_[i]))));
    return m;
  }

  bool operator==(const InvariantConnection& o) const { return gamma_ == o.gamma_; }

 private:
  std::size_t dim_ = 0;
  std::vector<S> gamma_;
  ConnectionKind kind_ = ConnectionKind::LeviCivita;
};

/// Curvature R(x,y)z = ∇_x∇_y z - ∇_y∇_x z - ∇_{[x,y]} z on invariant fields.
/// Layout: r[((i*d + j)*d + k)*d + p] = (R(e_i, e_j) e_k)^p.
template <class S>
class Curvature {
 public:
  Curvature(const LieAlgebra<S>& alg, const InvariantConnection<S>& conn) : d_(alg.dim()), r_(d_ * d_ * d_ * d_, S(0)) {
    const std::size_t d = d_;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t p = 0; p < d; ++p) {
            S acc(0);
            for (std::size_t m = 0; m < d; ++m) {
              acc += conn.gamma(j, k, m) * conn.gamma(i, m, p);
              acc -= conn.gamma(i, k, m) * conn.gamma(j, m, p);
              acc -= alg.c(i, j, m) * conn.gamma(m, k, p);
            }
            at(i, j, k, p) = acc;
          }
      }
  }

  std::size_t dim() const { return d_; }
  const S& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t p) const {
    return r_[((i * d_ + j) * d_ + k) * d_ + p];
  }

  /// Ric(x, y) = tr(z ↦ R(z, x) y), as a (not necessarily symmetric) matrix.
  Matrix<S> ricci() const {
    Matrix<S> ric(d_, d_);
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t k = 0; k < d_; ++k) {
        S acc(0);
        for (std::size_t i = 0; i < d_; ++i) acc += (*this)(i, j, k, i);
        ric(j, k) = acc;
      }
    return ric;
  }

  /// 2-form (x, y) ↦ ½ tr(J ∘ R(x, y)).
  KForm<S> trace_form(const Matrix<S>& j) const {
    KForm<S> f(d_, 2);
    const S half = S(1) / S(2);
    for (std::size_t a = 0; a < d_; ++a)
      for (std::size_t b = a + 1; b < d_; ++b) {
        S tr(0);
        for (std::size_t q = 0; q < d_; ++q)
          for (std::size_t p = 0; p < d_; ++p) tr += j(q, p) * (*this)(a, b, q, p);
        f[Index{a, b}] = half * tr;
      }
    return f;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : r_) m = std::max(m, std::fabs(to_double(x)));
    return m;
  }

 private:
  S& at(std::size_t i, std::size_t j, std::size_t k, std::size_t p) { return r_[((i * d_ + j) * d_ + k) * d_ + p]; }

  std::size_t d_;
  std::vector<S> r_;
};

template <class S>
struct RicciData {
  /// Symmetric Ricci tensor (Levi-Civita, Weyl). For Chern this holds the raw
  /// trace Ric(x,y) = tr(z ↦ R(z,x)y), which need not be symmetric.
  SymTensor<S> ricci_sym;
  /// Ric^W(J·,·) for Weyl, the Chern–Ricci form for Chern, Ric(J·,·) for LC.
  KForm<S> ricci_form;
  /// g-trace of ricci_sym.
  S scalar{0};
  /// max |Ric - Ric^T| of the raw Ricci trace.
  double asymmetry = 0.0;
};

template <class S>
InvariantConnection<S> levi_civita(const LieAlgebra<S>& alg, const SymTensor<S>& g) {
  MetricDuality<S> md(g);
  return InvariantConnection<S>(alg.dim(), koszul_coefficients(alg, md), ConnectionKind::LeviCivita);
}

template <class S>
InvariantConnection<S> levi_civita(const HermitianStructure<S>& h) {
  return levi_civita(h.algebra(), h.g());
}

/// ∇^W_x y = ∇^LC_x y - ½θ(x)y - ½θ(y)x + ½g(x,y)θ♯.
template <class S>
InvariantConnection<S> weyl_connection(const HermitianStructure<S>& h, const LeeData<S>& lee) {
  if (lee.conformal_class == ConformalClass::NotLcK) throw PreconditionError("Weyl connection needs an lcK structure");
  const std::size_t d = h.dim();
  const InvariantConnection<S> lc = levi_civita(h);
  MetricDuality<S> md(h.g());
  const Vec<S> th = lee.theta.as_vector();
  const Vec<S> sharp = md.sharp(th);
  const S half = S(1) / S(2);
  std::vector<S> gamma = lc.coefficients();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      S* row = &gamma[(i * d + j) * d];
      row[j] -= half * th[i];
      row[i] -= half * th[j];
      for (std::size_t k = 0; k < d; ++k) row[k] += half * h.g()(i, j) * sharp[k];
    }
  return InvariantConnection<S>(d, std::move(gamma), ConnectionKind::Weyl);
}

/// Chern connection: g(∇^Ch_x y, z) = g(∇^LC_x y, z) - ½ dω(Jx, y, z).
/// It is the unique connection with ∇g = 0, ∇J = 0 and torsion satisfying
/// T(Jx, y) = J T(x, y); the unit tests check all three.
template <class S>
InvariantConnection<S> chern_connection(const HermitianStructure<S>& h) {
  const std::size_t d = h.dim();
  const InvariantConnection<S> lc = levi_civita(h);
  MetricDuality<S> md(h.g());
  const KForm<S> domega = ce_differential(h.algebra(), h.omega());
  const Matrix<S>& j = h.J().matrix();
  const S half = S(1) / S(2);
  std::vector<S> gamma = lc.coefficients();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t b = 0; b < d; ++b) {
      Vec<S> lowered(d, S(0));
      for (std::size_t c = 0; c < d; ++c) {
        S acc(0);
        for (std::size_t a = 0; a < d; ++a) {
          if (j(a, i) == 0) continue;
          acc += j(a, i) * domega.component(Index{a, b, c});
        }
        lowered[c] = -half * acc;
      }
      const Vec<S> up = md.inverse_metric() * lowered;
      for (std::size_t k = 0; k < d; ++k) gamma[(i * d + b) * d + k] += up[k];
    }
  return InvariantConnection<S>(d, std::move(gamma), ConnectionKind::Chern);
}

/// Ricci data of an invariant connection. For Weyl the form is Ric^W(J·,·);
/// for Chern it is the Chern–Ricci form ½ tr(J ∘ R(x,y)).
template <class S>
RicciData<S> curvature_ricci(const HermitianStructure<S>& h, const InvariantConnection<S>& conn) {
  const Curvature<S> curv(h.algebra(), conn);
  const Matrix<S> ric = curv.ricci();
  RicciData<S> out;
  out.asymmetry = (ric - ric.transpose()).max_abs();
  out.ricci_sym = SymTensor<S>(ric);
  MetricDuality<S> md(h.g());
  out.scalar = md.trace(out.ricci_sym);
  if (conn.kind() == ConnectionKind::Chern)
    out.ricci_form = curv.trace_form(h.J().matrix());
  else
    out.ricci_form = KForm<S>::from_matrix(h.J().matrix().transpose() * ric);
  return out;
}

/// Chern–Ricci form Ric(ω) via the curvature of the Chern connection.
template <class S>
RicciData<S> chern_ricci_form(const HermitianStructure<S>& h) {
  return curvature_ricci(h, chern_connection(h));
}

template <class S>
struct NablaThetaSplit {
  /// (∇θ)(x, y) = (∇_x θ)(y)
  SymTensor<S> full;
  /// ½(∇θ + ∇θ(J·, J·))
  SymTensor<S> j_invariant;
};

template <class S>
NablaThetaSplit<S> nabla_theta_split(const HermitianStructure<S>& h, const LeeData<S>& lee,
                                     const InvariantConnection<S>& lc) {
  if (lc.kind() != ConnectionKind::LeviCivita) throw PreconditionError("nabla_theta_split expects the Levi-Civita connection");
  const std::size_t d = h.dim();
  const Vec<S> th = lee.theta.as_vector();
  Matrix<S> nt(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      S acc(0);
      for (std::size_t k = 0; k < d; ++k) acc -= lc.gamma(i, j, k) * th[k];
      nt(i, j) = acc;
    }
  const Matrix<S>& jm = h.J().matrix();
  const Matrix<S> jj = jm.transpose() * nt * jm;
  NablaThetaSplit<S> out;
  out.full = SymTensor<S>(nt);
  out.j_invariant = SymTensor<S>((nt + jj) * (S(1) / S(2)));
  return out;
}

/// ∇^LC θ = 0.
template <class S>
bool vaisman_check(const HermitianStructure<S>& h, const LeeData<S>& lee, double tol = kFloatTolerance) {
  if (lee.conformal_class != ConformalClass::StrictLcK) throw PreconditionError("vaisman_check needs a strictly lcK structure");
  const auto split = nabla_theta_split(h, lee, levi_civita(h));
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j)
      if (!is_zero(split.full(i, j), tol)) return false;
  return true;
}

// ---- property probes used by tests and reports -------------------------------

/// max |∇_x y - ∇_y x - [x,y]| over basis pairs.
template <class S>
double torsion_residual(const LieAlgebra<S>& alg, const InvariantConnection<S>& conn) {
  const std::size_t d = alg.dim();
  double m = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        m = std::max(m, std::fabs(to_double(S(conn.gamma(i, j, k) - conn.gamma(j, i, k) - alg.c(i, j, k)))));
  return m;
}

/// max over x, y, z of |(∇_x g)(y, z) - θ(x) g(y, z)|; pass θ = 0 for metric connections.
template <class S>
double metric_defect(const InvariantConnection<S>& conn, const SymTensor<S>& g, const Vec<S>& theta) {
  const std::size_t d = g.dim();
  double m = 0.0;
  for (std::size_t x = 0; x < d; ++x) {
    const Matrix<S> nx = conn.nabla_matrix(x);
    // (∇_x g)(y,z) = -g(∇_x y, z) - g(y, ∇_x z)
    const Matrix<S> t = nx.transpose() * g.m + g.m * nx;
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) m = std::max(m, std::fabs(to_double(S(-t(y, z) - theta[x] * g(y, z)))));
  }
  return m;
}

/// max |(∇_x J) y| over basis vectors.
template <class S>
double complex_defect(const InvariantConnection<S>& conn, const Matrix<S>& j) {
  double m = 0.0;
  for (std::size_t x = 0; x < conn.dim(); ++x) {
    const Matrix<S> nx = conn.nabla_matrix(x);
    m = std::max(m, (nx * j - j * nx).max_abs());
  }
  return m;
}

/// max |(∇_x ω)(y, z) - θ(x) ω(y, z)|.
template <class S>
double form_defect(const InvariantConnection<S>& conn, const KForm<S>& omega, const Vec<S>& theta) {
  const Matrix<S> w = omega.as_matrix();
  double m = 0.0;
  for (std::size_t x = 0; x < conn.dim(); ++x) {
    const Matrix<S> nx = conn.nabla_matrix(x);
    const Matrix<S> t = nx.transpose() * w + w * nx;
    for (std::size_t y = 0; y < conn.dim(); ++y)
      for (std::size_t z = 0; z < conn.dim(); ++z) m = std::max(m, std::fabs(to_double(S(-t(y, z) - theta[x] * w(y, z)))));
  }
  return m;
}

}  // namespace lckw
