#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lckw/corpus.hpp"
#include "lckw/theorem_a.hpp"

using namespace lckw;
using Q = Rational;

namespace {

EinsteinFit<Q> fit_of(const HermitianStructure<Q>& h) {
  const auto lee = extract_lee_form(h);
  return einstein_fit(h, lee, chern_ricci_form(h));
}

}  // namespace

TEST_CASE("einstein_fit") {
  CHECK(*fit_of(kodaira_structure<Q>(1)).t == Q(0));
  for (std::size_t s = 1; s <= 3; ++s) CHECK(*fit_of(ot_solvable_structure<Q>(s)).t == Q(1, 2));
  CHECK(*fit_of(ot_solvable_structure<Q>(2, {Q(1), Q(-3)})).t == Q(1, 2));
  CHECK(*fit_of(ot_weight_deformation<Q>(Q(1))).t == Q(0));
  CHECK(*fit_of(ot_weight_deformation<Q>(Q(1, 4))).t == Q(3, 2));

  // Hyperbolic-base extension with a non-flat 4-dimensional base: Ric is not a multiple of dJθ.
  const auto ext = double_extension<Q>({kahler_hyperbolic_base<Q>(1), Endomorphism<Q>(Matrix<Q>(5, 5))});
  const auto f = fit_of(ext);
  CHECK_FALSE(f.t.has_value());
  CHECK(f.residual > 0.1);
}

TEST_CASE("identity suite on Kodaira") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto rep = identity_suite(kodaira_structure<Q>(n));
    CHECK(rep.all_pass());
    for (const auto& r : rep.records) {
      CHECK(r.applicable);
      CHECK(r.residual == 0.0);
    }
  }
}

TEST_CASE("identity suite on OT") {
  for (std::size_t s = 1; s <= 3; ++s) {
    const auto c = lck_curvature_data(ot_solvable_structure<Q>(s));
    CHECK(*c.fit.t == Q(1, 2));
    const auto rep = identity_suite(c);
    CHECK(rep.all_pass());
    for (const char* name : {"weyl_chern", "ric_w_lc", "djtheta", "scalar", "scalar_lc", "ricci_full", "bochner", "jtheta", "eqt"}) {
      const auto* r = rep.find(name);
      REQUIRE(r != nullptr);
      CHECK(r->applicable);
      CHECK(r->pass);
    }
  }
  // Ric^W(J·,·) = (n/2 + 1/2) dJθ for s = 1.
  const auto c = lck_curvature_data(ot_solvable_structure<Q>(1));
  CHECK(KForm<Q>::from_matrix(c.h.J().matrix().transpose() * c.ric_w.ricci_sym.m) == c.lee.dJ_theta * Q(3, 2));
}

TEST_CASE("identity suite on every StrictLcK corpus entry") {
  for (const auto& e : builtin_corpus()) {
    if (e.expected_class != ConformalClass::StrictLcK) continue;
    CAPTURE(e.name);
    const auto c = lck_curvature_data(e.h);
    const auto rep = identity_suite(c);
    for (const char* name : {"weyl_chern", "ric_w_lc", "djtheta", "scalar"}) CHECK(rep.find(name)->pass);
    if (c.fit.t) {
      CHECK(rep.find("scalar_lc")->pass);
      CHECK(rep.find("ricci_full")->pass);
    }
    CHECK(rep.all_pass());
    if (c.lee.gauduchon && c.fit.t) CHECK(eqt_certificate(c).value == 0);
  }
}

TEST_CASE("bochner_weitzenboeck_check") {
  const auto k = bochner_weitzenboeck_check(lck_curvature_data(kodaira_structure<Q>(1)));
  CHECK(k.applicable);
  CHECK(k.nabla_theta_norm_sq == 0);
  CHECK(k.ricci_theta_theta == 0);

  const auto o = bochner_weitzenboeck_check(lck_curvature_data(ot_solvable_structure<Q>(1)));
  CHECK(o.applicable);
  CHECK(o.nabla_theta_norm_sq != 0);
  CHECK(o.nabla_theta_norm_sq == -o.ricci_theta_theta);
  CHECK(o.rough_laplacian_pairing == o.nabla_theta_norm_sq);

  CHECK_FALSE(bochner_weitzenboeck_check(lck_curvature_data(ot_weight_deformation<Q>(Q(1)))).applicable);
}

TEST_CASE("eqt_certificate") {
  const auto k = eqt_certificate(lck_curvature_data(kodaira_structure<Q>(1)));
  CHECK(k.applicable);
  CHECK(k.value == 0);
  const auto o = eqt_certificate(lck_curvature_data(ot_solvable_structure<Q>(1)));
  CHECK(o.applicable);
  CHECK(o.value == 0);
  CHECK(o.jtheta_lhs != 0);
  CHECK(o.jtheta_lhs == o.jtheta_rhs);
  std::mt19937 rng(3u);
  for (int i = 0; i < 3; ++i) {
    const auto h = double_extension(DoubleExtensionSpec<Q>{flat_kahler_abelian<Q>(4), random_admissible_derivation<Q>(2, rng)});
    const auto c = eqt_certificate(lck_curvature_data(h));
    CHECK(c.applicable);
    CHECK(c.value == 0);
  }
  CHECK_FALSE(eqt_certificate(lck_curvature_data(ot_weight_deformation<Q>(Q(1)))).applicable);
}

TEST_CASE("corollary_t") {
  for (std::size_t s = 1; s <= 3; ++s) {
    const auto c = lck_curvature_data(ot_solvable_structure<Q>(s));
    CHECK(corollary_t(c) == Q(1, 2));
    CHECK(corollary_t(c) == *c.fit.t);
  }
  CHECK_THROWS_AS(corollary_t(lck_curvature_data(kodaira_structure<Q>(1))), PreconditionError);
  // Off Gauduchon input the formula is not tied to the fit.
  const auto w = lck_curvature_data(ot_weight_deformation<Q>(Q(1)));
  CHECK(corollary_t(w) != *w.fit.t);
}

TEST_CASE("theorem_a_report") {
  const auto k = theorem_a_report(kodaira_structure<Q>(1));
  CHECK(k.verdict == TheoremVerdict::Confirmed);
  CHECK(k.summary == "Gauduchon, t=0, Vaisman: theorem instance confirmed");

  const auto o = theorem_a_report(ot_solvable_structure<Q>(1));
  CHECK(o.verdict == TheoremVerdict::Consistent);
  CHECK(o.summary == "Gauduchon, t=0.5, non-Vaisman: consistent (hypothesis not met)");

  std::mt19937 rng(11u);
  const auto e = theorem_a_report(
      double_extension(DoubleExtensionSpec<Q>{flat_kahler_abelian<Q>(6), random_admissible_derivation<Q>(3, rng)}));
  CHECK(e.verdict == TheoremVerdict::Confirmed);
  CHECK(*e.t == Q(0));
  CHECK(*e.vaisman);

  const auto w = theorem_a_report(ot_weight_deformation<Q>(Q(1)));
  CHECK(w.verdict == TheoremVerdict::Consistent);
  CHECK_FALSE(w.gauduchon);
  CHECK_FALSE(*w.vaisman);

  CHECK(theorem_a_report(perturbed_kodaira()).verdict == TheoremVerdict::NotApplicable);
}

TEST_CASE("Gauduchon with t <= 0 is Vaisman across the corpus") {
  std::size_t instances = 0;
  for (const auto& e : builtin_corpus()) {
    CAPTURE(e.name);
    const auto rep = theorem_a_report(e.h);
    CHECK(rep.verdict != TheoremVerdict::Alarm);
    if (rep.gauduchon && rep.t && !(*rep.t > 0)) {
      CHECK(*rep.vaisman);
      ++instances;
    }
    const auto fr = theorem_a_report(e.h.cast<double>());
    CHECK(fr.verdict != TheoremVerdict::Alarm);
  }
  CHECK(instances >= 10);
}
