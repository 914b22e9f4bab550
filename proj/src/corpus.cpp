#include "lckw/corpus.hpp"

#include <algorithm>
#include <random>

namespace lckw {

namespace {

using Q = Rational;

HermitianStructure<Q> as_hermitian(const FlatKahlerAlgebra<Q>& b) { return HermitianStructure<Q>(b.alg, b.J_l, b.g_l); }

}  // namespace

HermitianStructure<Q> perturbed_kodaira() {
  const HermitianStructure<Q> k = kodaira_structure<Q>(2);
  Matrix<Q> g = k.g().m;
  g(1, 1) = Q(2);
  g(3, 3) = Q(2);
  return HermitianStructure<Q>(k.algebra(), k.J(), SymTensor<Q>(g));
}

std::vector<CorpusEntry> builtin_corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, std::string family, HermitianStructure<Q> h,
                 ConformalClass cls = ConformalClass::StrictLcK) {
    out.push_back({std::move(name), std::move(family), std::move(h), cls});
  };

  for (std::size_t n = 1; n <= 4; ++n) add("kodaira_n" + std::to_string(n), "kodaira", kodaira_structure<Q>(n));

  for (std::size_t s = 1; s <= 3; ++s) add("ot_s" + std::to_string(s), "ot", ot_solvable_structure<Q>(s));
  add("ot_s1_angle", "ot", ot_solvable_structure<Q>(1, {Q(1)}));
  add("ot_s2_angles", "ot", ot_solvable_structure<Q>(2, {Q(1, 2), Q(-3, 2)}));
  add("ot_s3_angles", "ot", ot_solvable_structure<Q>(3, {Q(1), Q(2), Q(-1, 3)}));

  const std::pair<const char*, Q> weights[] = {{"1_4", Q(1, 4)}, {"1", Q(1)}, {"3_2", Q(3, 2)}};
  for (const auto& [tag, c] : weights) add(std::string("ot_weight_") + tag, "deformation", ot_weight_deformation(c));

  for (std::size_t m = 2; m <= 6; m += 2) {
    const auto base = flat_kahler_abelian<Q>(m);
    add("dext_abelian" + std::to_string(m) + "_d0", "double-extension",
        double_extension<Q>({base, Endomorphism<Q>(Matrix<Q>(m + 1, m + 1))}));
  }
  std::mt19937 rng(20240917u);
  const std::size_t random_dims[] = {2, 4, 4, 6, 6, 8};
  for (std::size_t r = 0; r < 6; ++r) {
    const std::size_t m = random_dims[r];
    const auto base = flat_kahler_abelian<Q>(m);
    add("dext_abelian" + std::to_string(m) + "_rand" + std::to_string(r), "double-extension",
        double_extension<Q>({base, random_admissible_derivation<Q>(m / 2, rng)}));
  }
  for (const Q& lambda : {Q(1), Q(2)}) {
    const auto base = flat_kahler_rotation<Q>(lambda);
    add("dext_rotation_l" + format_rational(lambda) + "_d0", "double-extension",
        double_extension<Q>({base, Endomorphism<Q>(Matrix<Q>(5, 5))}));
  }
  add("dext_rotation_l1_ab2_d0", "double-extension",
      double_extension<Q>({flat_kahler_rotation<Q>(Q(1), 1), Endomorphism<Q>(Matrix<Q>(7, 7))}));
  for (std::size_t pairs = 0; pairs <= 1; ++pairs) {
    const auto base = kahler_hyperbolic_base<Q>(pairs);
    const std::size_t m = base.alg.dim();
    add("dext_hyperbolic" + std::to_string(m) + "_d0", "double-extension",
        double_extension<Q>({base, Endomorphism<Q>(Matrix<Q>(m + 1, m + 1))}));
  }

  add("kahler_abelian4", "kahler", as_hermitian(flat_kahler_abelian<Q>(4)), ConformalClass::Kahler);
  add("kahler_abelian6", "kahler", as_hermitian(flat_kahler_abelian<Q>(6)), ConformalClass::Kahler);
  add("kahler_hyperbolic4", "kahler", as_hermitian(kahler_hyperbolic_base<Q>(1)), ConformalClass::Kahler);
  add("kahler_rotation4", "kahler", as_hermitian(flat_kahler_rotation<Q>(Q(1))), ConformalClass::Kahler);

  std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return out;
}

}  // namespace lckw
