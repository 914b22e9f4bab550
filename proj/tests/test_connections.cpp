#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lckw/corpus.hpp"

using namespace lckw;
using Q = Rational;

namespace {

LieAlgebra<Q> so3() {
  LieAlgebra<Q> a(3);
  a.add_bracket_term(0, 1, 2, Q(1));
  a.add_bracket_term(1, 2, 0, Q(1));
  a.add_bracket_term(0, 2, 1, Q(-1));
  return a;
}

std::vector<HermitianStructure<Q>> strict_lck_corpus() {
  std::vector<HermitianStructure<Q>> out;
  for (const auto& e : builtin_corpus())
    if (e.expected_class == ConformalClass::StrictLcK) out.push_back(e.h);
  return out;
}

}  // namespace

TEST_CASE("levi_civita") {
  const LieAlgebra<Q> ab(4);
  const SymTensor<Q> id(Matrix<Q>::identity(4));
  const auto flat = levi_civita(ab, id);
  for (const auto& x : flat.coefficients()) CHECK(x == 0);

  LieAlgebra<Q> h3(3);
  h3.add_bracket_term(0, 1, 2, Q(1));
  const SymTensor<Q> id3(Matrix<Q>::identity(3));
  const auto lc = levi_civita(h3, id3);
  CHECK(lc.gamma(0, 1, 2) == Q(1, 2));
  CHECK(torsion_residual(h3, lc) == 0.0);
  CHECK(metric_defect(lc, id3, Vec<Q>(3, Q(0))) == 0.0);

  // Bi-invariant metric: ∇_x y = ½[x,y].
  const auto bi = levi_civita(so3(), id3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vec<Q> half = so3().basis_bracket(i, j);
      for (auto& v : half) v /= 2;
      CHECK(bi.nabla(unit_vector<Q>(3, i), unit_vector<Q>(3, j)) == half);
    }
}

TEST_CASE("Levi-Civita is the unique torsion-free metric connection") {
  // A metric torsion-free connection is pinned by the Koszul formula; compare
  // against an independent solve of the linear system ∇g = 0, T = 0.
  for (const auto& h : {kodaira_structure<Q>(1), ot_solvable_structure<Q>(1, {Q(2)}), ot_weight_deformation<Q>(Q(1, 4))}) {
    const std::size_t d = h.dim(), unknowns = d * d * d;
    std::vector<Vec<Q>> rows;
    Vec<Q> rhs;
    auto var = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * d + j) * d + k; };
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          Vec<Q> r(unknowns, Q(0));
          r[var(i, j, k)] += 1;
          r[var(j, i, k)] -= 1;
          rows.push_back(r);
          rhs.push_back(h.algebra().c(i, j, k));
        }
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z) {
          Vec<Q> r(unknowns, Q(0));
          for (std::size_t p = 0; p < d; ++p) {
            r[var(x, y, p)] += h.g()(p, z);
            r[var(x, z, p)] += h.g()(y, p);
          }
          rows.push_back(r);
          rhs.push_back(Q(0));
        }
    Matrix<Q> a(rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < unknowns; ++c) a(r, c) = rows[r][c];
    CHECK(rank(a) == unknowns);
    const auto sol = least_squares(a, rhs);
    REQUIRE(sol);
    CHECK(*sol == levi_civita(h).coefficients());
  }
}

TEST_CASE("curvature_ricci") {
  const SymTensor<Q> id3(Matrix<Q>::identity(3));
  const Curvature<Q> round(so3(), levi_civita(so3(), id3));
  CHECK(round.ricci() == Matrix<Q>::identity(3) * Q(1, 2));

  const Curvature<Q> flat(LieAlgebra<Q>(4), levi_civita(LieAlgebra<Q>(4), SymTensor<Q>(Matrix<Q>::identity(4))));
  CHECK(flat.max_abs() == 0.0);

  const auto k = kodaira_structure<Q>(1);
  const auto ric = curvature_ricci(k, levi_civita(k));
  CHECK(ric.asymmetry == 0.0);
  CHECK(ric.scalar == Q(-1, 2));
}

TEST_CASE("first Bianchi identity for Levi-Civita") {
  for (const auto& h : strict_lck_corpus()) {
    const std::size_t d = h.dim();
    if (d > 6) continue;
    const Curvature<Q> r(h.algebra(), levi_civita(h));
    bool ok = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t p = 0; p < d; ++p)
            if (r(i, j, k, p) + r(j, k, i, p) + r(k, i, j, p) != 0) ok = false;
    CHECK(ok);
  }
}

TEST_CASE("weyl_connection") {
  const HermitianStructure<Q> flat(LieAlgebra<Q>(4), ComplexStructure<Q>(Endomorphism<Q>(standard_pairing_J<Q>(4))),
                                   SymTensor<Q>(Matrix<Q>::identity(4)));
  const auto lee0 = extract_lee_form(flat);
  CHECK(weyl_connection(flat, lee0) == levi_civita(flat));

  const auto k = kodaira_structure<Q>(1);
  CHECK(complex_defect(weyl_connection(k, extract_lee_form(k)), k.J().matrix()) == 0.0);

  for (const auto& h : strict_lck_corpus()) {
    const auto lee = extract_lee_form(h);
    const auto w = weyl_connection(h, lee);
    CHECK(torsion_residual(h.algebra(), w) == 0.0);
    CHECK(complex_defect(w, h.J().matrix()) == 0.0);
    CHECK(form_defect(w, h.omega(), lee.theta.as_vector()) == 0.0);
  }
}

TEST_CASE("Weyl connection is unchanged by a constant rescale") {
  for (const auto& h : {ot_solvable_structure<Q>(2), kodaira_structure<Q>(2), ot_weight_deformation<Q>(Q(3, 2))}) {
    const auto hs = h.scaled(Q(5, 3));
    const auto lee = extract_lee_form(h), lees = extract_lee_form(hs);
    CHECK(lee.theta == lees.theta);
    CHECK(weyl_connection(h, lee) == weyl_connection(hs, lees));
  }
}

TEST_CASE("chern_ricci_form") {
  const HermitianStructure<Q> flat(LieAlgebra<Q>(4), ComplexStructure<Q>(Endomorphism<Q>(standard_pairing_J<Q>(4))),
                                   SymTensor<Q>(Matrix<Q>::identity(4)));
  CHECK(chern_ricci_form(flat).ricci_form.is_zero());
  CHECK(chern_ricci_form(kodaira_structure<Q>(1)).ricci_form.is_zero());
  const auto ot = ot_solvable_structure<Q>(1);
  CHECK(chern_ricci_form(ot).ricci_form == extract_lee_form(ot).dJ_theta * Q(1, 2));

  for (const auto& h : strict_lck_corpus()) {
    const auto rho = chern_ricci_form(h).ricci_form;
    CHECK(ce_differential(h.algebra(), rho).is_zero());
    const Matrix<Q>& j = h.J().matrix();
    CHECK(j.transpose() * rho.as_matrix() * j == rho.as_matrix());
  }
}

TEST_CASE("nabla_theta_split and vaisman_check") {
  const auto k = kodaira_structure<Q>(1);
  const auto lk = extract_lee_form(k);
  const auto sk = nabla_theta_split(k, lk, levi_civita(k));
  CHECK(sk.full.m == Matrix<Q>(4, 4));
  CHECK(vaisman_check(k, lk));

  const auto ot = ot_solvable_structure<Q>(1);
  const auto lo = extract_lee_form(ot);
  const auto so = nabla_theta_split(ot, lo, levi_civita(ot));
  CHECK(!(so.full.m == Matrix<Q>(4, 4)));
  CHECK(!(so.full.m == so.j_invariant.m));
  CHECK_FALSE(vaisman_check(ot, lo));

  CHECK_THROWS_AS(nabla_theta_split(ot, lo, weyl_connection(ot, lo)), PreconditionError);
  const HermitianStructure<Q> flat(LieAlgebra<Q>(4), ComplexStructure<Q>(Endomorphism<Q>(standard_pairing_J<Q>(4))),
                                   SymTensor<Q>(Matrix<Q>::identity(4)));
  CHECK_THROWS_AS(vaisman_check(flat, extract_lee_form(flat)), PreconditionError);
}

TEST_CASE("float-mode connections match rational mode") {
  const auto h = ot_solvable_structure<Q>(2, {Q(1, 3), Q(-2)});
  const auto hf = h.cast<double>();
  CHECK(levi_civita(hf).distance(levi_civita(h.cast<double>())) == 0.0);
  const auto exact = chern_ricci_form(h).ricci_form.cast<double>();
  CHECK((chern_ricci_form(hf).ricci_form - exact).max_abs() < 1e-12);
}
