#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lckw/corpus.hpp"
#include "lckw/crosschecks.hpp"

#include <set>

using namespace lckw;
using Q = Rational;

TEST_CASE("heisenberg_algebra") {
  const auto h1 = heisenberg_algebra<Q>(1);
  CHECK(h1.dim() == 3);
  CHECK(h1.nonzero_bracket_count() == 1);
  const auto h2 = heisenberg_algebra<Q>(2);
  CHECK(h2.dim() == 5);
  CHECK(h2.nonzero_bracket_count() == 2);
  CHECK(h2.c(0, 2, 4) == Q(1));
  CHECK(h2.c(1, 3, 4) == Q(1));
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto rep = validate_algebra(heisenberg_algebra<Q>(n));
    CHECK(rep.jacobi);
    CHECK(rep.unimodular);
  }
}

TEST_CASE("kodaira_structure") {
  const auto k1 = kodaira_structure<Q>(1);
  CHECK(k1.dim() == 4);
  const auto lee = extract_lee_form(k1);
  CHECK(vaisman_check(k1, lee));
  CHECK(chern_ricci_form(k1).ricci_form.is_zero());
  const auto k2 = kodaira_structure<Q>(2);
  CHECK(*potential_form_check(k2, extract_lee_form(k2)));
  CHECK_THROWS_AS(kodaira_structure<Q>(0), std::invalid_argument);
}

TEST_CASE("flat_kahler_abelian") {
  CHECK(flat_kahler_abelian<Q>(2).alg.dim() == 2);
  CHECK(flat_kahler_abelian<Q>(2).flat);
  CHECK(flat_kahler_abelian<Q>(4).flat);
  CHECK_THROWS_AS(flat_kahler_abelian<Q>(3), std::invalid_argument);
  CHECK(flat_kahler_rotation<Q>(Q(1)).flat);
  CHECK_FALSE(kahler_hyperbolic_base<Q>(1).flat);
}

TEST_CASE("double extension with D = 0 reproduces Kodaira") {
  for (std::size_t n = 1; n <= 4; ++n) CHECK(kodaira_extension_match(n));
}

TEST_CASE("oscillator-type double extension") {
  // Rotation of the abelian plane commuting with J_l.
  Matrix<Q> rot(2, 2);
  rot(1, 0) = Q(1);
  rot(0, 1) = Q(-1);
  const DoubleExtensionSpec<Q> spec{flat_kahler_abelian<Q>(2), derivation_on_extension(rot)};
  const auto h = double_extension(spec);
  const auto lee = extract_lee_form(h);
  CHECK(lee.conformal_class == ConformalClass::StrictLcK);
  CHECK(vaisman_check(h, lee));
  CHECK(chern_ricci_form(h).ricci_form.is_zero());
  CHECK(validate_algebra(h.algebra()).jacobi);
  // Non-nilpotent: [T, x] has a component along 𝔩.
  CHECK(h.algebra().c(0, 1, 2) == Q(1));
  CHECK(double_extension_contract(spec).all());
}

TEST_CASE("double extension rejects inadmissible D") {
  Matrix<Q> sym(3, 3);
  sym(0, 0) = Q(1);
  try {
    double_extension(DoubleExtensionSpec<Q>{flat_kahler_abelian<Q>(2), Endomorphism<Q>(sym)});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.invariant() == "skew");
  }
  Matrix<Q> noncomm(5, 5);
  noncomm(2, 0) = Q(1);
  noncomm(0, 2) = Q(-1);
  CHECK_THROWS_AS(double_extension(DoubleExtensionSpec<Q>{flat_kahler_abelian<Q>(4), Endomorphism<Q>(noncomm)}), ValidationError);
  Matrix<Q> hitsz(3, 3);
  hitsz(0, 2) = Q(1);
  CHECK_THROWS_AS(double_extension(DoubleExtensionSpec<Q>{flat_kahler_abelian<Q>(2), Endomorphism<Q>(hitsz)}), ValidationError);
  CHECK_THROWS_AS(double_extension(DoubleExtensionSpec<Q>{flat_kahler_abelian<Q>(2), Endomorphism<Q>(Matrix<Q>(2, 2))}),
                  ValidationError);
}

TEST_CASE("random admissible double extensions satisfy the contract") {
  std::mt19937 rng(20240917u);
  std::set<std::size_t> dims;
  for (int i = 0; i < 12; ++i) {
    const auto spec = random_extension_spec(rng);
    dims.insert(spec.base.alg.dim());
    const auto c = double_extension_contract(spec);
    CHECK(c.jacobi);
    CHECK(c.unimodular);
    CHECK(c.vaisman);
    CHECK(c.chern_ricci_flat);
    CHECK(c.cocycle);
  }
  CHECK(dims.size() >= 2);
}

TEST_CASE("double extensions over non-abelian flat bases") {
  for (std::size_t pairs = 0; pairs <= 1; ++pairs) {
    const auto base = flat_kahler_rotation<Q>(Q(2), pairs);
    const std::size_t m = base.alg.dim();
    const DoubleExtensionSpec<Q> spec{base, Endomorphism<Q>(Matrix<Q>(m + 1, m + 1))};
    CHECK(double_extension_contract(spec).all());
  }
}

TEST_CASE("ot_solvable_structure") {
  for (std::size_t s = 1; s <= 3; ++s) {
    const auto h = ot_solvable_structure<Q>(s);
    CHECK(h.n() == s + 1);
    const auto rep = validate_algebra(h.algebra());
    CHECK(rep.jacobi);
    CHECK(rep.unimodular);
    CHECK(nijenhuis_check(h.algebra(), h.J()) == 0.0);
    const auto c = lck_curvature_data(h);
    CHECK(*c.fit.t == Q(1, 2));
    CHECK(corollary_t(c) == Q(1, 2));
    CHECK_FALSE(vaisman_check(c.h, c.lee));
  }
  CHECK_THROWS_AS(ot_solvable_structure<Q>(2, {Q(1)}), std::invalid_argument);
}

TEST_CASE("OT curvature quantities do not depend on the rotation angles") {
  for (std::size_t s = 1; s <= 2; ++s) {
    const auto plain = ot_solvable_structure<Q>(s);
    std::vector<Q> angles;
    for (std::size_t i = 0; i < s; ++i) angles.push_back(Q(static_cast<long>(2 * i + 1), 3));
    const auto rotated = ot_solvable_structure<Q>(s, angles);
    CHECK(validate_algebra(rotated.algebra()).jacobi);
    const auto a = lck_curvature_data(plain), b = lck_curvature_data(rotated);
    CHECK(a.lee.theta == b.lee.theta);
    CHECK(a.lee.dJ_theta == b.lee.dJ_theta);
    CHECK(a.chern.ricci_form == b.chern.ricci_form);
    CHECK(*a.fit.t == *b.fit.t);
    CHECK(MetricDuality<Q>(a.h.g()).norm_sq(a.nt.full) == MetricDuality<Q>(b.h.g()).norm_sq(b.nt.full));
  }
}

TEST_CASE("OT algebra matches the pointwise model at the base point") {
  for (std::size_t s = 1; s <= 3; ++s) CHECK(ot_frame_match(s).max() < 1e-8);
}

TEST_CASE("ot_weight_deformation") {
  CHECK(ot_weight_deformation<Q>(Q(1, 2)).algebra() == ot_solvable_structure<Q>(1).algebra());
  const auto h = ot_weight_deformation<Q>(Q(3, 2));
  CHECK(validate_algebra(h.algebra()).jacobi);
  CHECK_FALSE(validate_algebra(h.algebra()).unimodular);
  const auto lee = extract_lee_form(h);
  CHECK(lee.theta == KForm<Q>::basis(4, {1}) * Q(3));
  CHECK_FALSE(lee.gauduchon);
}

TEST_CASE("skew_hermitian_real_form commutes with J and is skew") {
  Matrix<Q> a(2, 2), b(2, 2);
  a(0, 1) = Q(3, 2);
  a(1, 0) = Q(-3, 2);
  b(0, 0) = Q(1);
  b(0, 1) = Q(-1, 2);
  b(1, 0) = Q(-1, 2);
  const auto m = skew_hermitian_real_form(a, b);
  const auto j = standard_pairing_J<Q>(4);
  CHECK(m * j == j * m);
  CHECK(m.transpose() == m * Q(-1));
}

TEST_CASE("builtin corpus") {
  const auto corpus = builtin_corpus();
  CHECK(corpus.size() >= 30);
  std::set<std::string> names, families;
  for (const auto& e : corpus) {
    names.insert(e.name);
    families.insert(e.family);
    CAPTURE(e.name);
    CHECK(extract_lee_form(e.h).conformal_class == e.expected_class);
  }
  CHECK(names.size() == corpus.size());
  CHECK(families.size() >= 4);
  CHECK(std::is_sorted(corpus.begin(), corpus.end(), [](const auto& x, const auto& y) { return x.name < y.name; }));
}
