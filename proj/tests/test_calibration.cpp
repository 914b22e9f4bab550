// Sign-convention anchors for the connection and curvature code.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lckw/constructions.hpp"

using namespace lckw;
using Q = Rational;

namespace {

template <class S>
void check_chern_axioms(const HermitianStructure<S>& h) {
  const auto ch = chern_connection(h);
  const std::size_t d = h.dim();
  CHECK(metric_defect(ch, h.g(), Vec<S>(d, S(0))) == 0.0);
  CHECK(complex_defect(ch, h.J().matrix()) == 0.0);
  // T(Jx, y) = J T(x, y)
  const Matrix<S>& j = h.J().matrix();
  auto torsion = [&](const Vec<S>& x, const Vec<S>& y) {
    Vec<S> a = ch.nabla(x, y), b = ch.nabla(y, x), c = h.algebra().bracket(x, y);
    for (std::size_t k = 0; k < d; ++k) a[k] = a[k] - b[k] - c[k];
    return a;
  };
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      const Vec<S> ex = unit_vector<S>(d, x), ey = unit_vector<S>(d, y);
      const Vec<S> lhs = torsion(j * ex, ey);
      const Vec<S> rhs = j * torsion(ex, ey);
      CHECK(lhs == rhs);
    }
}

}  // namespace

TEST_CASE("Chern connection axioms on Kodaira and OT") {
  check_chern_axioms(kodaira_structure<Q>(1));
  check_chern_axioms(kodaira_structure<Q>(2));
  check_chern_axioms(ot_solvable_structure<Q>(1));
  check_chern_axioms(ot_solvable_structure<Q>(2));
}

TEST_CASE("Chern-Ricci equals Ric(J.,.) on a Kahler algebra") {
  const auto base = kahler_hyperbolic_base<Q>(1);
  const HermitianStructure<Q> h(base.alg, base.J_l, base.g_l);
  const auto rho = chern_ricci_form(h).ricci_form;
  const auto lc = curvature_ricci(h, levi_civita(h)).ricci_form;
  CHECK(rho == lc);
  CHECK(!rho.is_zero());
}

TEST_CASE("Kodaira anchor values") {
  const auto h = kodaira_structure<Q>(1);
  const auto lee = extract_lee_form(h);
  CHECK(lee.conformal_class == ConformalClass::StrictLcK);
  CHECK(lee.theta == KForm<Q>::basis(4, {0}));
  CHECK(lee.gauduchon);
  CHECK(chern_ricci_form(h).ricci_form.is_zero());
  CHECK(*potential_form_check(h, lee));
  CHECK(vaisman_check(h, lee));
}

TEST_CASE("OT anchor: Ric(omega) = dJtheta / 2") {
  for (std::size_t s = 1; s <= 3; ++s) {
    const auto h = ot_solvable_structure<Q>(s);
    CHECK(validate_algebra(h.algebra()).jacobi);
    CHECK(validate_algebra(h.algebra()).unimodular);
    CHECK(nijenhuis_check(h.algebra(), h.J()) == 0.0);
    const auto lee = extract_lee_form(h);
    REQUIRE(lee.conformal_class == ConformalClass::StrictLcK);
    CHECK(lee.gauduchon);
    CHECK(!vaisman_check(h, lee));
    CHECK(lee.norm_sq == Q(s, s + 1));
    const auto rho = chern_ricci_form(h).ricci_form;
    CHECK(rho == lee.dJ_theta * Q(1, 2));
  }
}

TEST_CASE("Weyl connection properties") {
  const auto h = ot_solvable_structure<Q>(2);
  const auto lee = extract_lee_form(h);
  const auto w = weyl_connection(h, lee);
  CHECK(torsion_residual(h.algebra(), w) == 0.0);
  CHECK(complex_defect(w, h.J().matrix()) == 0.0);
  CHECK(form_defect(w, h.omega(), lee.theta.as_vector()) == 0.0);
  CHECK(metric_defect(w, h.g(), lee.theta.as_vector()) == 0.0);
}
