#pragma once

// Test-only brute-force oracles. Everything here works on raw nested vectors
// with explicit index loops, independently of the library's tensor and
// contraction paths, so agreement between the two is a genuine cross-check.

#include <array>
#include <vector>

#include "norden/family.hpp"

namespace oracle {

using norden::Rational;

inline Rational rq(long num, long den = 1) {
  return norden::NumTraits<Rational>::fraction(num, den);
}

inline norden::FamilyParams<Rational> lam(long a, long b, long c, long d) {
  return {{rq(a), rq(b), rq(c), rq(d)}};
}

inline norden::Manifold<Rational> fam(long a, long b, long c, long d) {
  return norden::family_manifold(lam(a, b, c, d));
}

template <class T>
using Grid2 = std::vector<std::vector<T>>;
template <class T>
using Grid3 = std::vector<std::vector<std::vector<T>>>;
template <class T>
using Grid4 = std::vector<Grid3<T>>;

template <class T>
Grid2<T> grid2(int n) {
  return Grid2<T>(n, std::vector<T>(n, norden::NumTraits<T>::zero()));
}
template <class T>
Grid3<T> grid3(int n) {
  return Grid3<T>(n, grid2<T>(n));
}
template <class T>
Grid4<T> grid4(int n) {
  return Grid4<T>(n, grid3<T>(n));
}

// Copies library tensors into raw grids so the oracle code below never
// touches the tensor API.
template <class T>
Grid4<T> raw4(const norden::Tensor<T>& t) {
  const int n = t.dim();
  Grid4<T> out = grid4<T>(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) out[a][b][c][d] = t(a, b, c, d);
  return out;
}
template <class T>
Grid2<T> raw2(const norden::Tensor<T>& t) {
  const int n = t.dim();
  Grid2<T> out = grid2<T>(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out[a][b] = t(a, b);
  return out;
}

// rho(y,z) = g^{ij} R(i,y,z,j) by a plain quadruple loop.
template <class T>
Grid2<T> ricci_by_loops(const Grid4<T>& r, const Grid2<T>& ginv) {
  const int n = static_cast<int>(ginv.size());
  Grid2<T> rho = grid2<T>(n);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rho[y][z] += ginv[i][j] * r[i][y][z][j];
  return rho;
}

// Same contraction with all loops reversed: rational-mode results must not
// depend on evaluation order.
template <class T>
Grid2<T> ricci_by_loops_reversed(const Grid4<T>& r, const Grid2<T>& ginv) {
  const int n = static_cast<int>(ginv.size());
  Grid2<T> rho = grid2<T>(n);
  for (int j = n - 1; j >= 0; --j)
    for (int i = n - 1; i >= 0; --i)
      for (int z = n - 1; z >= 0; --z)
        for (int y = n - 1; y >= 0; --y) rho[y][z] += ginv[i][j] * r[i][y][z][j];
  return rho;
}

template <class T>
T scalar_by_loops(const Grid2<T>& rho, const Grid2<T>& ginv) {
  const int n = static_cast<int>(ginv.size());
  T tau = norden::NumTraits<T>::zero();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tau += ginv[a][b] * rho[a][b];
  return tau;
}

// Closed form the Koszul result must reproduce on the family:
// 2 D_{Xi} Xj = [Xi,Xj] - J[Xi,JXj] + J[JXi,Xj].
template <class T>
std::vector<T> family_connection_closed_form(const norden::Manifold<T>& m,
                                             int i, int j) {
  const int n = m.dim();
  std::vector<T> xi = m.frame_vector(i);
  std::vector<T> xj = m.frame_vector(j);
  std::vector<T> term1 = m.bracket(xi, xj);
  std::vector<T> term2 = m.apply_j(m.bracket(xi, m.apply_j(xj)));
  std::vector<T> term3 = m.apply_j(m.bracket(m.apply_j(xi), xj));
  std::vector<T> out(n);
  for (int k = 0; k < n; ++k)
    out[k] = norden::NumTraits<T>::fraction(1, 2) *
             (term1[k] - term2[k] + term3[k]);
  return out;
}

// Valid input for validate() and classify() outside the built-in family:
// a two-step nilpotent bracket with the standard block J and split metric.
inline norden::ManifoldSpec<Rational> heisenberg_like_spec() {
  auto algebra = norden::LieAlgebra<Rational>::zero(4);
  algebra.c(0, 1, 2) = rq(1);
  algebra.c(1, 0, 2) = rq(-1);
  norden::Tensor<Rational> j(4, {norden::Variance::Contra, norden::Variance::Co});
  j(2, 0) = rq(1);
  j(3, 1) = rq(1);
  j(0, 2) = rq(-1);
  j(1, 3) = rq(-1);
  norden::Tensor<Rational> g(4, norden::covariant(2));
  g(0, 0) = rq(1);
  g(1, 1) = rq(1);
  g(2, 2) = rq(-1);
  g(3, 3) = rq(-1);
  return {std::move(algebra), std::move(j), std::move(g)};
}

}  // namespace oracle
