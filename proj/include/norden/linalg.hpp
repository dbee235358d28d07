#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "norden/scalar.hpp"

namespace norden {

template <class T>
using Matrix = std::vector<std::vector<T>>;

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

// Signature of a symmetric matrix by Lagrange congruence reduction: pivots are
// produced by symmetric row/column elimination only, so the count of
// positive/negative/zero pivots is exact in rational mode (no eigenvalues).
template <class T>
Signature symmetric_signature(Matrix<T> a, double tol = kDefaultTol) {
  const int n = static_cast<int>(a.size());
  Signature sig;
  auto is_zero = [&](const T& v) { return NumTraits<T>::is_zero(v, tol); };
  auto swap_basis = [&](int p, int q) {
    std::swap(a[p], a[q]);
    for (int r = 0; r < n; ++r) std::swap(a[r][p], a[r][q]);
  };
  for (int k = 0; k < n; ++k) {
    if (is_zero(a[k][k])) {
      int d = -1;
      for (int i = k + 1; i < n && d < 0; ++i)
        if (!is_zero(a[i][i])) d = i;
      if (d >= 0) {
        swap_basis(k, d);
      } else {
        // all remaining diagonal entries vanish; merge a nonzero off-diagonal
        // pair (x_i += x_j makes the new diagonal entry 2 a_ij)
        int oi = -1, oj = -1;
        for (int i = k; i < n && oi < 0; ++i)
          for (int j = i + 1; j < n && oi < 0; ++j)
            if (!is_zero(a[i][j])) {
              oi = i;
              oj = j;
            }
        if (oi < 0) {
          sig.zero += n - k;
          return sig;
        }
        for (int r = 0; r < n; ++r) a[oi][r] += a[oj][r];
        for (int r = 0; r < n; ++r) a[r][oi] += a[r][oj];
        if (oi != k) swap_basis(k, oi);
      }
    }
    T pivot = a[k][k];
    if (pivot > NumTraits<T>::zero())
      ++sig.positive;
    else
      ++sig.negative;
    for (int i = k + 1; i < n; ++i) {
      if (is_zero(a[i][k])) continue;
      T f = a[i][k] / pivot;
      for (int r = k; r < n; ++r) a[i][r] -= f * a[k][r];
      for (int r = k; r < n; ++r) a[r][i] -= f * a[r][k];
    }
  }
  return sig;
}

// Gauss-Jordan inverse; returns nullopt for a singular matrix.
template <class T>
std::optional<Matrix<T>> invert(Matrix<T> a, double tol = kDefaultTol) {
  const int n = static_cast<int>(a.size());
  Matrix<T> inv(n, std::vector<T>(n, NumTraits<T>::zero()));
  for (int i = 0; i < n; ++i) inv[i][i] = NumTraits<T>::one();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    T best = NumTraits<T>::zero();
    for (int r = col; r < n; ++r) {
      T mag = NumTraits<T>::abs(a[r][col]);
      if (!NumTraits<T>::is_zero(a[r][col], tol) && (pivot < 0 || mag > best)) {
        pivot = r;
        best = mag;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    T p = a[col][col];
    for (int c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || NumTraits<T>::is_zero(a[r][col], 0.0)) continue;
      T f = a[r][col];
      for (int c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

// Solution of a (possibly overdetermined) linear system by Gaussian
// elimination with exact pivoting in rational mode.
template <class T>
struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  int nullity = 0;                 // solution-space dimension when consistent
  std::vector<T> particular;       // one solution (free variables set to 0)
  std::vector<std::vector<T>> nullspace;
};

template <class T>
LinearSolution<T> solve_linear_system(Matrix<T> a, std::vector<T> b,
                                      double tol = kDefaultTol) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    T best = NumTraits<T>::zero();
    for (int r = row; r < rows; ++r) {
      T mag = NumTraits<T>::abs(a[r][col]);
      if (!NumTraits<T>::is_zero(a[r][col], tol) && (pr < 0 || mag > best)) {
        pr = r;
        best = mag;
      }
    }
    if (pr < 0) continue;
    std::swap(a[pr], a[row]);
    std::swap(b[pr], b[row]);
    T p = a[row][col];
    for (int c = col; c < cols; ++c) a[row][c] /= p;
    b[row] /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == row || NumTraits<T>::is_zero(a[r][col], 0.0)) continue;
      T f = a[r][col];
      for (int c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  LinearSolution<T> sol;
  sol.rank = row;
  sol.nullity = cols - row;
  for (int r = row; r < rows; ++r)
    if (!NumTraits<T>::is_zero(b[r], tol)) return sol;  // inconsistent
  sol.consistent = true;
  sol.particular.assign(cols, NumTraits<T>::zero());
  for (int r = 0; r < row; ++r) sol.particular[pivot_col[r]] = b[r];
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, NumTraits<T>::zero());
    v[free] = NumTraits<T>::one();
    for (int r = 0; r < row; ++r) v[pivot_col[r]] = -a[r][free];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

}  // namespace norden
