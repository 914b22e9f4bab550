#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lckw/constructions.hpp"
#include "lckw/sasaki.hpp"

#include <algorithm>
#include <cmath>

using namespace lckw;
using Q = Rational;

TEST_CASE("h3 is Sasaki with constants (-2, 4)") {
  const auto h3 = heisenberg_sasaki<Q>();
  CHECK(check_sasaki(h3).pass);
  const auto fit = eta_einstein_fit(h3);
  CHECK(fit.pass);
  CHECK(fit.alpha == Q(-2));
  CHECK(fit.beta == Q(4));
  CHECK(fit.sum_defect == 0);
  const auto [a, b] = vaisman_sasaki_constants(Q(0), 2);
  CHECK(fit.alpha == a);
  CHECK(fit.beta == b);
}

TEST_CASE("higher Heisenberg algebras") {
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto s = heisenberg_sasaki<Q>(k);
    CHECK(check_sasaki(s).pass);
    const auto fit = eta_einstein_fit(s);
    CHECK(fit.pass);
    const auto [a, b] = vaisman_sasaki_constants(Q(0), k + 1);
    CHECK(fit.alpha == a);
    CHECK(fit.beta == b);
  }
}

TEST_CASE("round sphere") {
  const auto s = sphere_sasaki<Q>();
  CHECK(check_sasaki(s).pass);
  const auto fit = eta_einstein_fit(s);
  CHECK(fit.pass);
  CHECK(fit.alpha + fit.beta == Q(2));
  CHECK(fit.beta == 0);
}

TEST_CASE("perturbed metric gives a large residual") {
  // Every left-invariant metric on h3 is eta-Einstein, so perturb h5: scaling
  // one horizontal direction splits the horizontal Ricci eigenvalues.
  auto s = heisenberg_sasaki<Q>(2);
  s.g_S.m(0, 0) = Q(3);
  CHECK_FALSE(check_sasaki(s).pass);
  const auto fit = eta_einstein_fit(s);
  CHECK_FALSE(fit.pass);
  CHECK(fit.residual > 0.1);
}

TEST_CASE("vaisman_sasaki_constants") {
  CHECK(vaisman_sasaki_constants(Q(0), 2) == std::pair<Q, Q>(Q(-2), Q(4)));
  CHECK(vaisman_sasaki_constants(Q(-1), 3) == std::pair<Q, Q>(Q(2), Q(2)));
  for (long t = -3; t <= 3; ++t)
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto [a, b] = vaisman_sasaki_constants(Q(t, 2), n);
      CHECK(a + b == Q(static_cast<long>(2 * n - 2)));
    }
}

TEST_CASE("Sasaki structure underlying Kodaira") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto s = sasaki_from_vaisman(kodaira_structure<Q>(n));
    CHECK(s.dim() == 2 * n + 1);
    CHECK(check_sasaki(s).pass);
    const auto fit = eta_einstein_fit(s);
    CHECK(fit.pass);
    const auto [a, b] = vaisman_sasaki_constants(Q(0), n + 1);
    CHECK(fit.alpha == a);
    CHECK(fit.beta == b);
  }
  CHECK_THROWS_AS(sasaki_from_vaisman(ot_solvable_structure<Q>(1)), PreconditionError);
}

TEST_CASE("Sasaki structures from random double extensions") {
  std::mt19937 rng(5u);
  for (int i = 0; i < 3; ++i) {
    const auto h = double_extension(DoubleExtensionSpec<Q>{flat_kahler_abelian<Q>(4), random_admissible_derivation<Q>(2, rng)});
    const auto s = sasaki_from_vaisman(h);
    CHECK(check_sasaki(s).pass);
    const auto fit = eta_einstein_fit(s);
    if (fit.pass) CHECK(fit.sum_defect == 0);
  }
}

TEST_CASE("cone consistency") {
  const auto h3 = heisenberg_sasaki<Q>().cast<double>();
  const auto c = cone_consistency_check(h3, {0.5, 1.0, 2.0});
  REQUIRE(c.residuals.size() == 3);
  CHECK(c.max_residual < 1e-4);
  const double spread = *std::max_element(c.residuals.begin(), c.residuals.end()) -
                        *std::min_element(c.residuals.begin(), c.residuals.end());
  CHECK(spread < 1e-4);

  const auto sphere = cone_consistency_check(sphere_sasaki<Q>().cast<double>(), {1.0});
  CHECK(sphere.max_residual < 1e-5);
  CHECK_THROWS_AS(cone_consistency_check(h3, {0.0}), std::domain_error);
}
