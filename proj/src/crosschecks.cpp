#include "lckw/crosschecks.hpp"

#include "lckw/pointwise.hpp"
#include "lckw/sasaki.hpp"

#include <algorithm>
#include <cmath>

namespace lckw {

double FrameMatch::max() const { return std::max({metric, omega, theta, chern_ricci, half_dj_theta}); }

FrameMatch ot_frame_match(std::size_t s, double h) {
  const HermitianStructure<double> alg = ot_solvable_structure<Rational>(s).cast<double>();
  const LeeData<double> lee = extract_lee_form(alg);
  ChartPoint p;
  p.z.assign(s, Complex(0.0, 1.0));
  p.z.emplace_back(0.0, 0.0);
  const OtModelRecord rec = ot_model_eval(s, p, h);
  const MetricField field = ot_metric_field(s);

  FrameMatch out;
  out.metric = (real_metric(field, p) - alg.g().m).max_abs();
  out.omega = (rec.omega - alg.omega()).max_abs();
  out.theta = (rec.theta_fd - lee.theta).max_abs();
  out.chern_ricci = (complex_to_real_form(rec.ric_fd) - chern_ricci_form(alg).ricci_form).max_abs();
  out.half_dj_theta = (rec.half_dj_theta_fd - lee.dJ_theta * 0.5).max_abs();
  return out;
}

bool kodaira_extension_match(std::size_t n) {
  using Q = Rational;
  const HermitianStructure<Q> k = kodaira_structure<Q>(n);
  const std::size_t m = 2 * n;
  const HermitianStructure<Q> e = double_extension<Q>({flat_kahler_abelian<Q>(m), Endomorphism<Q>(Matrix<Q>(m + 1, m + 1))});
  const auto perm = kodaira_relabeling(n);
  if (!(e.algebra().relabeled(perm) == k.algebra())) return false;
  const std::size_t d = m + 2;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (e.J().matrix()(perm[a], perm[b]) != k.J().matrix()(a, b) || e.g()(perm[a], perm[b]) != k.g()(a, b)) return false;
  return true;
}

ExtensionContract double_extension_contract(const DoubleExtensionSpec<Rational>& spec) {
  using Q = Rational;
  ExtensionContract out;
  HermitianStructure<Q> h;
  try {
    h = double_extension(spec);
  } catch (const ValidationError&) {
    return out;
  }
  const ValidationReport rep = validate_algebra(h.algebra());
  out.jacobi = rep.jacobi;
  out.unimodular = rep.unimodular;
  const LeeData<Q> lee = extract_lee_form(h);
  if (lee.conformal_class != ConformalClass::StrictLcK) return out;
  out.vaisman = vaisman_check(h, lee);
  out.chern_ricci_flat = chern_ricci_form(h).ricci_form.is_zero();
  const std::size_t m = spec.base.alg.dim();
  out.cocycle = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (-lee.dJ_theta[Index{1 + i, 1 + j}] != spec.base.omega_l[Index{i, j}]) out.cocycle = false;
  return out;
}

DoubleExtensionSpec<Rational> random_extension_spec(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pairs(1, 4);
  const std::size_t k = pairs(rng);
  return {flat_kahler_abelian<Rational>(2 * k), random_admissible_derivation<Rational>(k, rng)};
}

std::vector<CrossCheck> builtin_cross_checks() {
  std::vector<CrossCheck> out;
  auto add = [&](std::string name, double residual, double threshold) {
    out.push_back({std::move(name), residual, threshold, residual < threshold});
  };

  for (std::size_t n = 1; n <= 4; ++n)
    add("kodaira_equals_extension_n" + std::to_string(n), kodaira_extension_match(n) ? 0.0 : 1.0, 0.5);

  std::mt19937 rng(7u);
  double contract_failures = 0.0;
  for (int r = 0; r < 10; ++r)
    if (!double_extension_contract(random_extension_spec(rng)).all()) contract_failures += 1.0;
  add("double_extension_contract_random10", contract_failures, 0.5);

  for (std::size_t s = 1; s <= 3; ++s) {
    double anchor = 0.0, ric = 0.0;
    for (const ChartPoint& p : ot_sample_points(s, 10, static_cast<unsigned>(100 + s))) {
      const OtModelRecord rec = ot_model_eval(s, p);
      anchor = std::max(anchor, rec.anchor_rel_residual);
      ric = std::max(ric, rec.ric_fd_rel_residual);
    }
    add("ot_anchor_s" + std::to_string(s), anchor, 1e-6);
    add("ot_ricci_fd_s" + std::to_string(s), ric, 1e-6);
    add("ot_frame_match_s" + std::to_string(s), ot_frame_match(s).max(), 1e-8);
  }

  for (std::size_t n = 2; n <= 3; ++n) {
    std::mt19937 prng(static_cast<unsigned>(40 + n));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 5; ++i) {
      ChartPoint p;
      for (std::size_t j = 0; j < n; ++j) p.z.emplace_back(u(prng), u(prng));
      const double t = hopf_model_eval(n, p).einstein_t_fd;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    add("hopf_t_point_independent_n" + std::to_string(n), hi - lo, 1e-5);
    add("hopf_not_chern_ricci_flat_n" + std::to_string(n), std::fabs(lo) > 1e-3 ? 0.0 : 1.0, 0.5);
  }

  {
    const auto h3 = heisenberg_sasaki<Rational>();
    const auto fit = eta_einstein_fit(h3);
    const auto [a, b] = vaisman_sasaki_constants(Rational(0), 2);
    add("sasaki_h3_constants", std::max(std::fabs(to_double(Rational(fit.alpha - a))), std::fabs(to_double(Rational(fit.beta - b)))),
        1e-8);
    add("sasaki_h3_cone", cone_consistency_check(h3.cast<double>(), {0.5, 1.0, 2.0}).max_residual, 1e-4);
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto s = sasaki_from_vaisman(kodaira_structure<Rational>(n));
    const auto fit = eta_einstein_fit(s);
    const auto [a, b] = vaisman_sasaki_constants(Rational(0), n + 1);
    const double dev = fit.pass ? std::max(std::fabs(to_double(Rational(fit.alpha - a))), std::fabs(to_double(Rational(fit.beta - b)))) : 1.0;
    add("sasaki_kodaira_n" + std::to_string(n) + "_constants", dev, 1e-8);
  }
  return out;
}

}  // namespace lckw
