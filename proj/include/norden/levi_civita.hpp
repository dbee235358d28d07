#pragma once

#include <string>
#include <utility>

#include "norden/lie.hpp"

namespace norden {

// Connection coefficients on the frame: gamma(i,j,m) is the m-th component of
// the derivative of the j-th frame field along the i-th.
template <class T>
struct Connection {
  Tensor<T> gamma;  // valence (co, co, contra)
};

// Koszul formula in the left-invariant constant-metric form:
// 2 g(D_{Xi} Xj, Xk) = g([Xi,Xj],Xk) + g([Xk,Xi],Xj) + g([Xk,Xj],Xi).
template <class T>
Connection<T> levi_civita(const Manifold<T>& m) {
  const int n = m.dim();
  const auto& c = m.structure();
  const auto& g = m.g();
  const auto& g_inv = m.g_inv();
  const T half = NumTraits<T>::fraction(1, 2);
  Tensor<T> gamma(n, {Variance::Co, Variance::Co, Variance::Contra});
  Tensor<T> lowered(n, covariant(3));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        T acc = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p)
          acc += c(i, j, p) * g(p, k) + c(k, i, p) * g(p, j) +
                 c(k, j, p) * g(p, i);
        lowered(i, j, k) = half * acc;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int mth = 0; mth < n; ++mth) {
        T acc = NumTraits<T>::zero();
        for (int k = 0; k < n; ++k) acc += g_inv(mth, k) * lowered(i, j, k);
        gamma(i, j, mth) = acc;
      }
  return {std::move(gamma)};
}

// Covariant derivative of the almost complex structure:
// (D_{Xi} J)Xj = D_{Xi}(J Xj) - J D_{Xi} Xj, returned as nj(i,j,m).
template <class T>
Tensor<T> nabla_j(const Manifold<T>& m, const Connection<T>& conn) {
  const int n = m.dim();
  const auto& j = m.j();
  const auto& gamma = conn.gamma;
  Tensor<T> nj(n, {Variance::Co, Variance::Co, Variance::Contra});
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b)
      for (int mth = 0; mth < n; ++mth) {
        T acc = NumTraits<T>::zero();
        for (int q = 0; q < n; ++q)
          acc += gamma(i, q, mth) * j(q, b) - j(mth, q) * gamma(i, b, q);
        nj(i, b, mth) = acc;
      }
  return nj;
}

template <class T>
struct FundamentalTensor {
  Tensor<T> f;  // (0,3)
};

template <class T>
FundamentalTensor<T> fundamental_tensor(const Manifold<T>& m,
                                        const Connection<T>& conn) {
  const int n = m.dim();
  Tensor<T> nj = nabla_j(m, conn);
  const auto& g = m.g();
  Tensor<T> f(n, covariant(3));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        T acc = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p) acc += nj(x, y, p) * g(p, z);
        f(x, y, z) = acc;
      }
  return {std::move(f)};
}

enum class ManifoldClass { Kahler, QuasiKahler, Other };

inline const char* to_string(ManifoldClass c) {
  switch (c) {
    case ManifoldClass::Kahler: return "Kahler";
    case ManifoldClass::QuasiKahler: return "quasi-Kahler";
    default: return "other";
  }
}

template <class T>
struct ClassVerdict {
  ManifoldClass cls = ManifoldClass::Other;
  Tensor<T> cyclic_residual;  // cyclic sum of F over the first three slots
  T max_f;
  T max_cyclic;
};

// Kahler when F vanishes; quasi-Kahler when the cyclic sum of F vanishes but
// F does not; anything else is reported as "other" (no further splitting).
template <class T>
ClassVerdict<T> classify(const Manifold<T>& m) {
  const int n = m.dim();
  Tensor<T> f = fundamental_tensor(m, levi_civita(m)).f;
  Tensor<T> cyc(n, covariant(3));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        cyc(x, y, z) = f(x, y, z) + f(y, z, x) + f(z, x, y);
  ClassVerdict<T> verdict{ManifoldClass::Other, std::move(cyc), max_abs(f),
                          NumTraits<T>::zero()};
  verdict.max_cyclic = max_abs(verdict.cyclic_residual);
  const double tol = m.tol();
  if (NumTraits<T>::is_zero(verdict.max_f, tol))
    verdict.cls = ManifoldClass::Kahler;
  else if (NumTraits<T>::is_zero(verdict.max_cyclic, tol))
    verdict.cls = ManifoldClass::QuasiKahler;
  return verdict;
}

// The two contraction routes for the square norm of nabla J: the direct
// pairing and the -2-weighted swapped pairing. They agree on quasi-Kahler
// structures; on other classes they can differ, so both are exposed.
template <class T>
std::pair<T, T> square_norm_routes(const Manifold<T>& m) {
  const int n = m.dim();
  Tensor<T> nj = nabla_j(m, levi_civita(m));
  const auto& g = m.g();
  const auto& gi = m.g_inv();
  auto pairing = [&](int i, int k, int j, int s) {
    T acc = NumTraits<T>::zero();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc += nj(i, k, a) * g(a, b) * nj(j, s, b);
    return acc;
  };
  T direct = NumTraits<T>::zero();
  T swapped = NumTraits<T>::zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int s = 0; s < n; ++s) {
          T w = gi(i, j) * gi(k, s);
          if (NumTraits<T>::is_zero(w, 0.0)) continue;
          direct += w * pairing(i, k, j, s);
          swapped += w * pairing(i, k, s, j);
        }
  return {direct, NumTraits<T>::fraction(-2, 1) * swapped};
}

// Square norm of the covariant derivative of J; both routes are evaluated
// and a disagreement is an internal-consistency error.
template <class T>
T square_norm_nabla_j(const Manifold<T>& m) {
  auto [direct, alternate] = square_norm_routes(m);
  if (!NumTraits<T>::equal(direct, alternate, m.tol()))
    throw InternalConsistencyError(
        "square norm of nabla J: contraction routes disagree (" +
        NumTraits<T>::str(direct) + " vs " + NumTraits<T>::str(alternate) +
        ")");
  return direct;
}

template <class T>
bool is_isotropic_kahler(const Manifold<T>& m) {
  return NumTraits<T>::is_zero(square_norm_nabla_j(m), m.tol());
}

}  // namespace norden
