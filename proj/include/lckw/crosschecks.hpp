#pragma once

#include "lckw/constructions.hpp"
#include "lckw/theorem_a.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace lckw {

/// One named comparison between independent computation routes.
struct CrossCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Componentwise differences between the OT algebra (ot_solvable_structure)
/// and the coordinate model at the base point w_i = i, z = 0, where the
/// invariant frame (B_1, A_1, .., Z_1, Z_2) coincides with the coordinate
/// frame (∂Re w_1, ∂Im w_1, .., ∂Re z, ∂Im z).
struct FrameMatch {
  double metric = 0.0;
  double omega = 0.0;
  double theta = 0.0;
  double chern_ricci = 0.0;
  double half_dj_theta = 0.0;
  double max() const;
};

FrameMatch ot_frame_match(std::size_t s, double h = 1e-3);

/// double_extension(abelian ℝ^{2n}, D = 0), relabeled, has exactly the
/// structure constants, J and g of kodaira_structure(n).
bool kodaira_extension_match(std::size_t n);

/// Properties every double extension over a flat base must have.
struct ExtensionContract {
  bool jacobi = false;
  bool unimodular = false;
  bool vaisman = false;
  bool chern_ricci_flat = false;
  /// -dJθ restricted to 𝔩 equals ω_l
  bool cocycle = false;
  bool all() const { return jacobi && unimodular && vaisman && chern_ricci_flat && cocycle; }
};

ExtensionContract double_extension_contract(const DoubleExtensionSpec<Rational>& spec);

/// Random admissible spec over an abelian base of dimension 2k, k in 1..4.
DoubleExtensionSpec<Rational> random_extension_spec(std::mt19937& rng);

/// Checks run by `suite --builtin-corpus` besides the per-structure ones.
std::vector<CrossCheck> builtin_cross_checks();

/// Flat list of the invariant quantities a report depends on, used to
/// compare rational and float evaluations of the same structure.
template <class S>
std::vector<std::pair<std::string, double>> invariant_quantities(const HermitianStructure<S>& h,
                                                                 double tol = kFloatTolerance) {
  std::vector<std::pair<std::string, double>> out;
  auto push_matrix = [&](const std::string& tag, const Matrix<S>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        out.emplace_back(tag + "[" + std::to_string(i) + "," + std::to_string(j) + "]", to_double(m(i, j)));
  };
  const LeeData<S> raw = extract_lee_form(h, tol);
  const Vec<S> th = raw.theta.as_vector();
  for (std::size_t i = 0; i < th.size(); ++i) out.emplace_back("theta[" + std::to_string(i) + "]", to_double(th[i]));
  out.emplace_back("theta_norm_sq", to_double(raw.norm_sq));
  out.emplace_back("codifferential", to_double(raw.codiff));
  push_matrix("dJtheta", raw.dJ_theta.as_matrix());
  push_matrix("ric_lc", curvature_ricci(h, levi_civita(h)).ricci_sym.m);
  push_matrix("chern_ricci", chern_ricci_form(h).ricci_form.as_matrix());
  if (raw.conformal_class != ConformalClass::StrictLcK) return out;
  const LcKCurvatureData<S> c = lck_curvature_data(h, tol);
  push_matrix("ric_w", c.ric_w.ricci_sym.m);
  push_matrix("nabla_theta", c.nt.full.m);
  push_matrix("nabla_theta_11", c.nt.j_invariant.m);
  out.emplace_back("scalar_lc", to_double(c.ric_lc.scalar));
  out.emplace_back("scalar_w", to_double(c.ric_w.scalar));
  out.emplace_back("t_least_squares", to_double(c.fit.t_ls));
  for (const auto& r : identity_suite(c, tol).records) {
    if (!r.applicable) continue;
    out.emplace_back("identity." + r.name + ".lhs", r.lhs);
    out.emplace_back("identity." + r.name + ".rhs", r.rhs);
  }
  return out;
}

}  // namespace lckw
