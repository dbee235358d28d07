#pragma once

#include <array>
#include <utility>

#include "norden/curvature.hpp"

namespace norden {

// The 4-parametric family of 4-dimensional Lie groups carrying the standard
// block almost complex structure and the split diagonal Norden metric.
template <class T>
struct FamilyParams {
  std::array<T, 4> lambda;
};

template <class T>
ManifoldSpec<T> family_spec(const FamilyParams<T>& p) {
  const int n = 4;
  const T& l1 = p.lambda[0];
  const T& l2 = p.lambda[1];
  const T& l3 = p.lambda[2];
  const T& l4 = p.lambda[3];
  LieAlgebra<T> algebra = LieAlgebra<T>::zero(n);
  auto set_bracket = [&](int i, int j, std::array<T, 4> v) {
    for (int k = 0; k < n; ++k) {
      algebra.c(i, j, k) = v[k];
      algebra.c(j, i, k) = -v[k];
    }
  };
  const T z = NumTraits<T>::zero();
  set_bracket(0, 1, {l1, l2, z, z});
  set_bracket(0, 2, {z, l3, z, -l1});
  set_bracket(0, 3, {-l3, z, z, -l2});
  set_bracket(1, 2, {z, l4, l1, z});
  set_bracket(1, 3, {-l4, z, l2, z});
  set_bracket(2, 3, {z, z, l3, l4});

  Tensor<T> j(n, {Variance::Contra, Variance::Co});
  j(2, 0) = NumTraits<T>::one();
  j(3, 1) = NumTraits<T>::one();
  j(0, 2) = -NumTraits<T>::one();
  j(1, 3) = -NumTraits<T>::one();

  Tensor<T> g(n, covariant(2));
  g(0, 0) = NumTraits<T>::one();
  g(1, 1) = NumTraits<T>::one();
  g(2, 2) = -NumTraits<T>::one();
  g(3, 3) = -NumTraits<T>::one();

  return {std::move(algebra), std::move(j), std::move(g)};
}

template <class T>
Manifold<T> family_manifold(const FamilyParams<T>& p,
                            double tol = kDefaultTol) {
  return Manifold<T>::validated(family_spec(p), tol);
}

// Golden component tables, hard-coded from their displays independently of
// the computational pipeline so the comparison is a genuine cross-check.
template <class T>
struct GoldenTables {
  Tensor<T> f;            // (0,3)
  Tensor<T> nabla_j;      // (1,2): (i,j,m)
  Tensor<T> torsion_vec;  // (1,2): (i,j,m)
  Tensor<T> torsion;      // (0,3), totally skew
  Tensor<T> nabla_prime;  // (1,2) connection coefficients
};

template <class T>
GoldenTables<T> golden_tables(const FamilyParams<T>& p) {
  const int n = 4;
  const T& l1 = p.lambda[0];
  const T& l2 = p.lambda[1];
  const T& l3 = p.lambda[2];
  const T& l4 = p.lambda[3];
  const T half = NumTraits<T>::fraction(1, 2);
  const T z = NumTraits<T>::zero();

  GoldenTables<T> out{
      Tensor<T>(n, covariant(3)),
      Tensor<T>(n, {Variance::Co, Variance::Co, Variance::Contra}),
      Tensor<T>(n, {Variance::Co, Variance::Co, Variance::Contra}),
      Tensor<T>(n, covariant(3)),
      Tensor<T>(n, {Variance::Co, Variance::Co, Variance::Contra})};

  // fundamental tensor: listed components, symmetric in the last two slots
  auto set_f = [&](int x, int y, int zz, T v) {
    out.f(x, y, zz) = v;
    out.f(x, zz, y) = v;
  };
  set_f(0, 0, 3, -half * l1);
  set_f(0, 1, 2, half * l1);
  set_f(2, 0, 1, -half * l1);
  set_f(2, 2, 3, -half * l1);
  set_f(3, 0, 0, l1);
  set_f(3, 2, 2, l1);
  set_f(1, 1, 2, half * l2);
  set_f(1, 3, 0, -half * l2);
  set_f(2, 1, 1, -l2);
  set_f(2, 3, 3, -l2);
  set_f(3, 0, 1, half * l2);
  set_f(3, 2, 3, half * l2);
  set_f(0, 0, 1, -half * l3);
  set_f(0, 2, 3, -half * l3);
  set_f(1, 0, 0, l3);
  set_f(1, 2, 2, l3);
  set_f(2, 0, 3, half * l3);
  set_f(2, 2, 1, -half * l3);
  set_f(0, 1, 1, -l4);
  set_f(0, 3, 3, -l4);
  set_f(1, 1, 0, half * l4);
  set_f(1, 2, 3, half * l4);
  set_f(3, 0, 3, half * l4);
  set_f(3, 2, 1, -half * l4);

  // nabla J rows; the display lists twice the derivative
  auto set_nj = [&](int i, int j, std::array<T, 4> twice) {
    for (int mth = 0; mth < n; ++mth) out.nabla_j(i, j, mth) = half * twice[mth];
  };
  set_nj(0, 0, {z, -l3, z, l1});
  set_nj(2, 2, {z, -l3, z, l1});
  set_nj(1, 1, {l4, z, -l2, z});
  set_nj(3, 3, {l4, z, -l2, z});
  set_nj(0, 2, {z, l1, z, l3});
  set_nj(2, 0, {z, -l1, z, -l3});
  set_nj(1, 3, {-l2, z, -l4, z});
  set_nj(3, 1, {l2, z, l4, z});
  set_nj(0, 1, {-l3, -(l4 + l4), -l1, z});
  set_nj(0, 3, {-l1, z, l3, l4 + l4});
  set_nj(1, 0, {l3 + l3, l4, z, l2});
  set_nj(1, 2, {z, l2, -(l3 + l3), -l4});
  set_nj(2, 1, {-l1, -(l2 + l2), l3, z});
  set_nj(2, 3, {l3, z, l1, l2 + l2});
  set_nj(3, 0, {l1 + l1, l2, z, -l4});
  set_nj(3, 2, {z, -l4, -(l1 + l1), -l2});

  // torsion values on frame pairs
  auto set_tv = [&](int i, int j, std::array<T, 4> v) {
    for (int mth = 0; mth < n; ++mth) {
      out.torsion_vec(i, j, mth) = v[mth];
      out.torsion_vec(j, i, mth) = -v[mth];
    }
  };
  set_tv(0, 1, {z, z, l3, l4});
  set_tv(0, 2, {z, l3, z, -l1});
  set_tv(0, 3, {z, l4, l1, z});
  set_tv(1, 2, {-l3, z, z, -l2});
  set_tv(1, 3, {-l4, z, l2, z});
  set_tv(2, 3, {l1, l2, z, z});

  // lowered torsion: four independent components of a 3-form
  auto set_form = [&](int a, int b, int c, T v) {
    out.torsion(a, b, c) = v;
    out.torsion(b, c, a) = v;
    out.torsion(c, a, b) = v;
    out.torsion(b, a, c) = -v;
    out.torsion(a, c, b) = -v;
    out.torsion(c, b, a) = -v;
  };
  set_form(0, 2, 3, l1);
  set_form(1, 2, 3, l2);
  set_form(0, 1, 2, -l3);
  set_form(0, 1, 3, -l4);

  // skew-torsion connection coefficients
  auto set_np = [&](int i, int j, std::array<T, 4> v) {
    for (int mth = 0; mth < n; ++mth) out.nabla_prime(i, j, mth) = v[mth];
  };
  set_np(0, 0, {z, -l1, z, -l3});
  set_np(2, 2, {z, -l1, z, -l3});
  set_np(1, 1, {l2, z, l4, z});
  set_np(3, 3, {l2, z, l4, z});
  set_np(0, 1, {l1, z, l3, z});
  set_np(2, 3, {l1, z, l3, z});
  set_np(0, 2, {z, l3, z, -l1});
  set_np(2, 0, {z, -l3, z, l1});
  set_np(0, 3, {-l3, z, l1, z});
  set_np(2, 1, {l3, z, -l1, z});
  set_np(1, 0, {z, -l2, z, -l4});
  set_np(3, 2, {z, -l2, z, -l4});
  set_np(1, 2, {z, l4, z, -l2});
  set_np(3, 0, {z, -l4, z, l2});
  set_np(1, 3, {-l4, z, l2, z});
  set_np(3, 1, {l4, z, -l2, z});

  return out;
}

template <class T>
struct FamilyReport {
  ManifoldClass classification = ManifoldClass::Other;
  bool some_lambda_nonzero = false;
  bool non_kahler_iff_lambda = false;  // F vanishes exactly when all lambda do

  T square_norm;
  bool norm_law_exact = false;  // equals -4(l1^2+l2^2-l3^2-l4^2)
  bool isotropic = false;
  bool isotropic_iff_locus = false;

  bool golden_f = false, golden_nabla_j = false, golden_torsion_vec = false,
       golden_torsion = false, golden_nabla_prime = false;

  bool b_is_three_quarters_prime = false;
  bool c_is_half_prime = false;

  KahlerVerdict<T> kahler_curvature{};
  bool kahler_locus = false;      // l1^2+l2^2 == l3^2+l4^2
  bool kahler_iff_locus = false;  // claimed equivalence, as measured
  T curvature_criterion_residual;  // direct cyclic criterion from nabla J
  bool criterion_matches_kahler = false;

  bool golden_all() const {
    return golden_f && golden_nabla_j && golden_torsion_vec && golden_torsion &&
           golden_nabla_prime;
  }
};

template <class T>
FamilyReport<T> family_report(const FamilyParams<T>& p,
                              double tol = kDefaultTol) {
  Manifold<T> m = family_manifold(p, tol);
  const int n = m.dim();
  FamilyReport<T> rep;
  rep.square_norm = NumTraits<T>::zero();
  rep.curvature_criterion_residual = NumTraits<T>::zero();

  for (const T& l : p.lambda)
    if (!NumTraits<T>::is_zero(l, tol)) rep.some_lambda_nonzero = true;

  ClassVerdict<T> verdict = classify(m);
  rep.classification = verdict.cls;
  rep.non_kahler_iff_lambda =
      (verdict.cls != ManifoldClass::Kahler) == rep.some_lambda_nonzero &&
      verdict.cls != ManifoldClass::Other;

  rep.square_norm = square_norm_nabla_j(m);
  T locus_value = p.lambda[0] * p.lambda[0] + p.lambda[1] * p.lambda[1] -
                  p.lambda[2] * p.lambda[2] - p.lambda[3] * p.lambda[3];
  rep.norm_law_exact = NumTraits<T>::equal(
      rep.square_norm, NumTraits<T>::fraction(-4, 1) * locus_value, tol);
  rep.isotropic = NumTraits<T>::is_zero(rep.square_norm, tol);
  rep.isotropic_iff_locus =
      rep.isotropic == NumTraits<T>::is_zero(locus_value, tol);

  Connection<T> lc = levi_civita(m);
  GoldenTables<T> golden = golden_tables(p);
  rep.golden_f =
      tensor_equal(fundamental_tensor(m, lc).f, golden.f, tol);
  rep.golden_nabla_j = tensor_equal(nabla_j(m, lc), golden.nabla_j, tol);

  SkewConnectionBundle<T> bundle = build_bundle(m);
  rep.golden_torsion = tensor_equal(bundle.torsion, golden.torsion, tol);
  rep.golden_nabla_prime =
      tensor_equal(bundle.nabla_prime.gamma, golden.nabla_prime, tol);
  {
    Tensor<T> tvec(n, {Variance::Co, Variance::Co, Variance::Contra});
    const auto& gi = m.g_inv();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int mth = 0; mth < n; ++mth) {
          T acc = NumTraits<T>::zero();
          for (int k = 0; k < n; ++k) acc += gi(mth, k) * bundle.torsion(i, j, k);
          tvec(i, j, mth) = acc;
        }
    rep.golden_torsion_vec = tensor_equal(tvec, golden.torsion_vec, tol);
  }

  Tensor<T> b_expect = NumTraits<T>::fraction(3, 4) * bundle.nabla_prime.gamma;
  Tensor<T> c_expect = NumTraits<T>::fraction(1, 2) * bundle.nabla_prime.gamma;
  rep.b_is_three_quarters_prime =
      tensor_equal(bundle.b_conn.gamma, b_expect, tol);
  rep.c_is_half_prime = tensor_equal(bundle.c_conn.gamma, c_expect, tol);

  rep.kahler_curvature = is_kahler_tensor(m, riemann(m, bundle.nabla_prime).r);
  T sum_left = p.lambda[0] * p.lambda[0] + p.lambda[1] * p.lambda[1];
  T sum_right = p.lambda[2] * p.lambda[2] + p.lambda[3] * p.lambda[3];
  rep.kahler_locus = NumTraits<T>::equal(sum_left, sum_right, tol);
  rep.kahler_iff_locus = rep.kahler_curvature.kahler == rep.kahler_locus;

  // direct cyclic criterion built from nabla J:
  // cyclic over (x,y,z) of g(phi(x,y), phi(z,w)) with
  // phi(x,y) = (D_x J)Jy + (D_Jx J)y
  {
    Tensor<T> nj = nabla_j(m, lc);
    const auto& j = m.j();
    const auto& g = m.g();
    Tensor<T> phi(n, {Variance::Co, Variance::Co, Variance::Contra});
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int mth = 0; mth < n; ++mth) {
          T acc = NumTraits<T>::zero();
          for (int pth = 0; pth < n; ++pth)
            acc += nj(x, pth, mth) * j(pth, y) + j(pth, x) * nj(pth, y, mth);
          phi(x, y, mth) = acc;
        }
    auto pair = [&](int a, int b, int c, int d) {
      T acc = NumTraits<T>::zero();
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          acc += phi(a, b, u) * g(u, v) * phi(c, d, v);
      return acc;
    };
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int zz = 0; zz < n; ++zz)
          for (int w = 0; w < n; ++w) {
            T s = pair(x, y, zz, w) + pair(y, zz, x, w) + pair(zz, x, y, w);
            T mag = NumTraits<T>::abs(s);
            if (mag > rep.curvature_criterion_residual)
              rep.curvature_criterion_residual = mag;
          }
  }
  rep.criterion_matches_kahler =
      NumTraits<T>::is_zero(rep.curvature_criterion_residual, tol) ==
      rep.kahler_curvature.kahler;
  return rep;
}

}  // namespace norden
