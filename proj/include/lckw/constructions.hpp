#pragma once

#include "lckw/connections.hpp"

#include <random>
#include <string>
#include <vector>

namespace lckw {

template <class S>
LieAlgebra<S> abelian_algebra(std::size_t dim) {
  return LieAlgebra<S>(dim);
}

/// h_{2n+1} in the basis X_1..X_n, Y_1..Y_n, Z with [X_i, Y_i] = Z.
template <class S>
LieAlgebra<S> heisenberg_algebra(std::size_t n) {
  if (n < 1) throw std::invalid_argument("heisenberg_algebra: n must be >= 1");
  LieAlgebra<S> alg(2 * n + 1);
  for (std::size_t i = 0; i < n; ++i) alg.add_bracket_term(i, n + i, 2 * n, S(1));
  return alg;
}

/// Complex structure with J e_{2i} = e_{2i+1} on pairs (e_{2i}, e_{2i+1}).
template <class S>
Matrix<S> standard_pairing_J(std::size_t dim) {
  Matrix<S> j(dim, dim);
  for (std::size_t i = 0; i + 1 < dim; i += 2) {
    j(i + 1, i) = S(1);
    j(i, i + 1) = S(-1);
  }
  return j;
}

/// Kodaira structure on ℝ ⊕ h_{2n+1}: basis T, X_1..X_n, Y_1..Y_n, Z with
/// [X_i, Y_i] = Z, J T = Z, J X_i = Y_i, and the euclidean metric.
template <class S>
HermitianStructure<S> kodaira_structure(std::size_t n) {
  if (n < 1) throw std::invalid_argument("kodaira_structure: n must be >= 1");
  const std::size_t d = 2 * n + 2;
  LieAlgebra<S> alg(d);
  for (std::size_t i = 0; i < n; ++i) alg.add_bracket_term(1 + i, 1 + n + i, d - 1, S(1));
  Matrix<S> j(d, d);
  j(d - 1, 0) = S(1);
  j(0, d - 1) = S(-1);
  for (std::size_t i = 0; i < n; ++i) {
    j(1 + n + i, 1 + i) = S(1);
    j(1 + i, 1 + n + i) = S(-1);
  }
  return HermitianStructure<S>(std::move(alg), ComplexStructure<S>(Endomorphism<S>(j)), SymTensor<S>(Matrix<S>::identity(d)));
}

/// A Kähler Lie algebra (𝔩, J_l, g_l) used as the base of a double extension.
template <class S>
struct FlatKahlerAlgebra {
  LieAlgebra<S> alg;
  ComplexStructure<S> J_l;
  SymTensor<S> g_l;
  KForm<S> omega_l;
  /// Levi-Civita curvature of g_l vanishes.
  bool flat = false;
};

template <class S>
FlatKahlerAlgebra<S> make_kahler_base(LieAlgebra<S> alg, Matrix<S> j, SymTensor<S> g) {
  HermitianStructure<S> h(alg, ComplexStructure<S>(Endomorphism<S>(j)), g);
  if (!ce_differential(h.algebra(), h.omega()).is_zero()) throw ValidationError("kahler", "base form is not closed");
  if (nijenhuis_check(h.algebra(), h.J()) > kFloatTolerance) throw ValidationError("integrability", "base J is not integrable");
  const Curvature<S> curv(h.algebra(), levi_civita(h));
  FlatKahlerAlgebra<S> out{h.algebra(), h.J(), h.g(), h.omega(), false};
  out.flat = curv.max_abs() < kFloatTolerance;
  return out;
}

/// Abelian ℝ^m with J x_i = y_i on pairs and the euclidean metric.
template <class S>
FlatKahlerAlgebra<S> flat_kahler_abelian(std::size_t m) {
  if (m == 0 || m % 2 != 0) throw std::invalid_argument("flat_kahler_abelian: m must be even and positive");
  return make_kahler_base(LieAlgebra<S>(m), standard_pairing_J<S>(m), SymTensor<S>(Matrix<S>::identity(m)));
}

/// Non-abelian flat Kähler algebra 𝔟 ⋉ 𝔲 ⊕ ℝ^{2k}: basis b_1, b_2, u_1, u_2,
/// then k abelian pairs, with [b_1, u_1] = λ u_2, [b_1, u_2] = -λ u_1,
/// J b_1 = b_2, J u_1 = u_2, euclidean metric.
template <class S>
FlatKahlerAlgebra<S> flat_kahler_rotation(const S& lambda, std::size_t abelian_pairs = 0) {
  const std::size_t m = 4 + 2 * abelian_pairs;
  LieAlgebra<S> alg(m);
  alg.add_bracket_term(0, 2, 3, lambda);
  alg.add_bracket_term(0, 3, 2, -lambda);
  return make_kahler_base(std::move(alg), standard_pairing_J<S>(m), SymTensor<S>(Matrix<S>::identity(m)));
}

/// Non-flat Kähler base: the hyperbolic plane aff(ℝ) (basis p, q with
/// [p, q] = -p, J p = q) times k abelian pairs.
template <class S>
FlatKahlerAlgebra<S> kahler_hyperbolic_base(std::size_t abelian_pairs = 0) {
  const std::size_t m = 2 + 2 * abelian_pairs;
  LieAlgebra<S> alg(m);
  alg.add_bracket_term(0, 1, 0, S(-1));
  return make_kahler_base(std::move(alg), standard_pairing_J<S>(m), SymTensor<S>(Matrix<S>::identity(m)));
}

/// Data of ℝθ ⋉_D (ℝJθ ⊕ 𝔩). D acts on ℝJθ ⊕ 𝔩 in the basis (l_1..l_m, Jθ).
template <class S>
struct DoubleExtensionSpec {
  FlatKahlerAlgebra<S> base;
  Endomorphism<S> D;
};

/// 𝔤 = ℝθ ⋉_D (ℝJθ ⊕ 𝔩) with basis T, l_1..l_m, Z, where
///   [T, v] = D v,  [x, y] = ω_l(x, y) Z + [x, y]_𝔩 for x, y ∈ 𝔩,  Z central in ℝZ ⊕ 𝔩,
/// J T = Z, J = J_l on 𝔩, and metric 1 ⊕ g_l ⊕ 1. Then θ = T^*, Jθ = Z^* and
/// -dJθ restricted to 𝔩 is ω_l.
///
/// D must be skew for g_l ⊕ 1, kill Z and commute with J_l, and the resulting
/// algebra must satisfy Jacobi. Violations throw ValidationError.
template <class S>
HermitianStructure<S> double_extension(const DoubleExtensionSpec<S>& spec) {
  const auto& base = spec.base;
  const std::size_t m = base.alg.dim();
  const std::size_t d = m + 2;
  const Matrix<S>& D = spec.D.m;
  if (D.rows() != m + 1 || D.cols() != m + 1) throw ValidationError("shape", "D must act on ℝJθ ⊕ 𝔩 (size m+1)");
  for (std::size_t i = 0; i <= m; ++i)
    if (D(i, m) != 0) throw ValidationError("derivation", "D must annihilate the Jθ direction");
  Matrix<S> gext(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) gext(i, j) = base.g_l(i, j);
  gext(m, m) = S(1);
  const Matrix<S> skew = D.transpose() * gext + gext * D;
  if (skew.max_abs() > kFloatTolerance || (ScalarTraits<S>::exact && !(skew == Matrix<S>(m + 1, m + 1))))
    throw ValidationError("skew", "D is not skew-symmetric for the extended metric");
  Matrix<S> dl(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) dl(i, j) = D(i, j);
  const Matrix<S> comm = dl * base.J_l.matrix() - base.J_l.matrix() * dl;
  if (comm.max_abs() > kFloatTolerance) throw ValidationError("commutation", "D does not commute with J_l");

  LieAlgebra<S> alg(d);
  const std::size_t T = 0, Z = d - 1;
  for (std::size_t j = 0; j <= m; ++j)
    for (std::size_t k = 0; k <= m; ++k)
      if (D(k, j) != 0) alg.add_bracket_term(T, 1 + j, 1 + k, D(k, j));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const S& w = base.omega_l[Index{i, j}];
      if (w != 0) alg.add_bracket_term(1 + i, 1 + j, Z, w);
      for (std::size_t k = 0; k < m; ++k)
        if (base.alg.c(i, j, k) != 0) alg.add_bracket_term(1 + i, 1 + j, 1 + k, base.alg.c(i, j, k));
    }
  const ValidationReport rep = validate_algebra(alg);
  if (!rep.jacobi) throw ValidationError("jacobi", "double extension violates Jacobi; D is not admissible");

  Matrix<S> j(d, d);
  j(Z, T) = S(1);
  j(T, Z) = S(-1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) j(1 + a, 1 + b) = base.J_l.matrix()(a, b);
  Matrix<S> g(d, d);
  g(T, T) = S(1);
  g(Z, Z) = S(1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) g(1 + a, 1 + b) = base.g_l(a, b);
  return HermitianStructure<S>(std::move(alg), ComplexStructure<S>(Endomorphism<S>(j)), SymTensor<S>(g));
}

/// Basis permutation taking double_extension(abelian ℝ^{2n}, D = 0), basis
/// (T, x_1, y_1, .., x_n, y_n, Z), to the kodaira_structure(n) ordering
/// (T, X_1..X_n, Y_1..Y_n, Z): kodaira basis vector a is extension vector perm[a].
inline std::vector<std::size_t> kodaira_relabeling(std::size_t n) {
  std::vector<std::size_t> perm(2 * n + 2);
  perm[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    perm[1 + i] = 1 + 2 * i;
    perm[1 + n + i] = 2 + 2 * i;
  }
  perm[2 * n + 1] = 2 * n + 1;
  return perm;
}

/// Solvable model of an Oeljeklaus–Toma manifold of type (s, 1), complex
/// dimension n = s + 1. Basis B_1, A_1, .., B_s, A_s, Z_1, Z_2, where in the
/// chart (w_1..w_s, z) on ℍ^s × ℂ
///   A_i = Im w_i ∂/∂Im w_i,  B_i = Im w_i ∂/∂Re w_i,
///   Z_1 = (Π Im w)^{-1/2} ∂/∂Re z,  Z_2 = (Π Im w)^{-1/2} ∂/∂Im z
/// are invariant under the affine group acting simply transitively. Brackets:
///   [A_i, B_i] = B_i,  [A_i, Z_1] = -½Z_1 + φ_i Z_2,  [A_i, Z_2] = -φ_i Z_1 - ½Z_2,
/// with rotation angles φ_i (default 0). J B_i = A_i, J Z_1 = Z_2.
///
/// The metric is ω = Σ_ij i(1+δ_ij)/2 dw_i∧dw̄_j/(Im w_i Im w_j) + i(Π Im w) dz∧dz̄
/// evaluated in this frame: g(A_i, A_j) = g(B_i, B_j) = 1 + δ_ij, g(Z_k, Z_k) = 2.
/// For s = 1 this is i dw∧dw̄/(Im w)² + i Im w dz∧dz̄; for all s it is
/// Π Im w times the Kähler form i∂∂̄(2/Π Im w + |z|²), hence lcK with
/// θ = d log Π Im w = Σ A_i^*.
template <class S>
HermitianStructure<S> ot_solvable_structure(std::size_t s, const std::vector<S>& angles = {}) {
  if (s < 1) throw std::invalid_argument("ot_solvable_structure: s must be >= 1");
  if (!angles.empty() && angles.size() != s) throw std::invalid_argument("ot_solvable_structure: need one angle per real place");
  const std::size_t d = 2 * s + 2;
  const std::size_t z1 = 2 * s, z2 = 2 * s + 1;
  const S half = S(1) / S(2);
  LieAlgebra<S> alg(d);
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t b = 2 * i, a = 2 * i + 1;
    const S phi = angles.empty() ? S(0) : angles[i];
    alg.add_bracket_term(b, a, b, S(-1));
    alg.add_bracket_term(a, z1, z1, -half);
    alg.add_bracket_term(a, z2, z2, -half);
    if (phi != 0) {
      alg.add_bracket_term(a, z1, z2, phi);
      alg.add_bracket_term(a, z2, z1, -phi);
    }
  }
  Matrix<S> g(d, d);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k) {
      const S v = i == k ? S(2) : S(1);
      g(2 * i, 2 * k) = v;
      g(2 * i + 1, 2 * k + 1) = v;
    }
  g(z1, z1) = S(2);
  g(z2, z2) = S(2);
  return HermitianStructure<S>(std::move(alg), ComplexStructure<S>(Endomorphism<S>(standard_pairing_J<S>(d))), SymTensor<S>(g));
}

/// OT s = 1 algebra with the ℂ-factor weight changed: [A, B] = B,
/// [A, Z_k] = -c Z_k, same J and metric. lcK with θ = 2c A^* for every c,
/// unimodular only at c = ½, so c ≠ ½ gives non-Gauduchon examples.
template <class S>
HermitianStructure<S> ot_weight_deformation(const S& c) {
  LieAlgebra<S> alg(4);
  alg.add_bracket_term(0, 1, 0, S(-1));
  alg.add_bracket_term(1, 2, 2, -c);
  alg.add_bracket_term(1, 3, 3, -c);
  Matrix<S> g = Matrix<S>::identity(4) * S(2);
  return HermitianStructure<S>(std::move(alg), ComplexStructure<S>(Endomorphism<S>(standard_pairing_J<S>(4))), SymTensor<S>(g));
}

/// Real form of a skew-Hermitian matrix A + iB (A skew, B symmetric) acting
/// on ℂ^k ≅ ℝ^{2k} with the pairing x_j, y_j = J x_j. Such maps are exactly
/// the skew-symmetric endomorphisms commuting with J.
template <class S>
Matrix<S> skew_hermitian_real_form(const Matrix<S>& a, const Matrix<S>& b) {
  const std::size_t k = a.rows();
  Matrix<S> m(2 * k, 2 * k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q) {
      // (A + iB)(x_q) = A_pq x_p + B_pq y_p;  (A + iB)(y_q) = -B_pq x_p + A_pq y_p
      m(2 * p, 2 * q) = a(p, q);
      m(2 * p + 1, 2 * q) = b(p, q);
      m(2 * p, 2 * q + 1) = -b(p, q);
      m(2 * p + 1, 2 * q + 1) = a(p, q);
    }
  return m;
}

/// Embeds an m×m map on 𝔩 into the (m+1)×(m+1) D acting on 𝔩 ⊕ ℝJθ.
template <class S>
Endomorphism<S> derivation_on_extension(const Matrix<S>& dl) {
  const std::size_t m = dl.rows();
  Matrix<S> d(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) d(i, j) = dl(i, j);
  return Endomorphism<S>(d);
}

/// Random skew-Hermitian D on the abelian base ℝ^{2k}: entries are small
/// rationals p/2 with |p| ≤ 4. Deterministic for a given engine state.
template <class S>
Endomorphism<S> random_admissible_derivation(std::size_t k, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  auto draw = [&] { return from_fraction<S>(num(rng), 2); };
  Matrix<S> a(k, k), b(k, k);
  for (std::size_t p = 0; p < k; ++p) {
    b(p, p) = draw();
    for (std::size_t q = p + 1; q < k; ++q) {
      a(p, q) = draw();
      a(q, p) = -a(p, q);
      b(p, q) = draw();
      b(q, p) = b(p, q);
    }
  }
  return derivation_on_extension(skew_hermitian_real_form(a, b));
}

}  // namespace lckw
