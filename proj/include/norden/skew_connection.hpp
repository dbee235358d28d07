#pragma once

#include <string>
#include <utility>
#include <vector>

#include "norden/torsion.hpp"

namespace norden {

// Refusal for inputs outside the existence class of the construction.
class NotQuasiKahlerError : public std::runtime_error {
 public:
  explicit NotQuasiKahlerError(ManifoldClass cls)
      : std::runtime_error(
            std::string("no natural connection with totally skew torsion "
                        "exists: manifold class is ") +
            norden::to_string(cls)),
        cls_(cls) {}
  ManifoldClass classification() const { return cls_; }

 private:
  ManifoldClass cls_;
};

// Transform tensor of the natural connection with totally skew torsion:
// Q(x,y,z) = (F(x,Jy,z) - F(Jx,y,z) - 2 F(y,Jx,z)) / 4.
// The equivalent vector form built from nabla J is evaluated as a cross-check
// and must agree exactly.
template <class T>
Tensor<T> build_q(const Manifold<T>& m) {
  ClassVerdict<T> verdict = classify(m);
  if (verdict.cls == ManifoldClass::Other)
    throw NotQuasiKahlerError(verdict.cls);
  const int n = m.dim();
  Connection<T> lc = levi_civita(m);
  Tensor<T> f = fundamental_tensor(m, lc).f;
  const auto& j = m.j();
  const auto& g = m.g();
  const T quarter = NumTraits<T>::fraction(1, 4);

  Tensor<T> q(n, covariant(3));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        T f_x_jy_z = NumTraits<T>::zero();
        T f_jx_y_z = NumTraits<T>::zero();
        T f_y_jx_z = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p) {
          f_x_jy_z += j(p, y) * f(x, p, z);
          f_jx_y_z += j(p, x) * f(p, y, z);
          f_y_jx_z += j(p, x) * f(y, p, z);
        }
        q(x, y, z) = quarter * (f_x_jy_z - f_jx_y_z -
                                NumTraits<T>::fraction(2, 1) * f_y_jx_z);
      }

  // vector-form route: Q(x,y) = ((D_x J)Jy - (D_Jx J)y - 2 (D_y J)Jx) / 4
  Tensor<T> nj = nabla_j(m, lc);
  Tensor<T> q_vec(n, covariant(3));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::vector<T> vec(n, NumTraits<T>::zero());
      for (int mth = 0; mth < n; ++mth) {
        T acc = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p)
          acc += nj(x, p, mth) * j(p, y) - j(p, x) * nj(p, y, mth) -
                 NumTraits<T>::fraction(2, 1) * nj(y, p, mth) * j(p, x);
        vec[mth] = quarter * acc;
      }
      for (int z = 0; z < n; ++z) {
        T acc = NumTraits<T>::zero();
        for (int mth = 0; mth < n; ++mth) acc += vec[mth] * g(mth, z);
        q_vec(x, y, z) = acc;
      }
    }
  if (!tensor_equal(q, q_vec, m.tol()))
    throw InternalConsistencyError(
        "skew transform tensor: component and vector routes disagree");
  if (!is_three_form(q, m.tol()))
    throw InternalConsistencyError(
        "skew transform tensor is not totally skew");
  return q;
}

template <class T>
struct SkewConnectionBundle {
  Connection<T> nabla_prime;  // natural connection with totally skew torsion
  Tensor<T> q;                // lowered transform tensor, a 3-form
  Tensor<T> torsion;          // lowered torsion, equals 2 q
  Connection<T> b_conn;       // D^B_x y = D_x y + (D_x J)Jy / 2
  Connection<T> c_conn;       // from D^B = (D^C + D')/2
};

template <class T>
SkewConnectionBundle<T> build_bundle(const Manifold<T>& m) {
  const int n = m.dim();
  Tensor<T> q = build_q(m);
  Connection<T> lc = levi_civita(m);
  const auto& g_inv = m.g_inv();
  const auto& j = m.j();

  Connection<T> prime{lc.gamma};
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int mth = 0; mth < n; ++mth) {
        T acc = NumTraits<T>::zero();
        for (int k = 0; k < n; ++k) acc += g_inv(mth, k) * q(i, jj, k);
        prime.gamma(i, jj, mth) += acc;
      }

  Tensor<T> torsion = NumTraits<T>::fraction(2, 1) * q;

  Tensor<T> nj = nabla_j(m, lc);
  Connection<T> b{lc.gamma};
  const T half = NumTraits<T>::fraction(1, 2);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int mth = 0; mth < n; ++mth) {
        T acc = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p) acc += nj(i, p, mth) * j(p, jj);
        b.gamma(i, jj, mth) += half * acc;
      }

  Connection<T> cconn{b.gamma};
  cconn.gamma *= NumTraits<T>::fraction(2, 1);
  cconn.gamma -= prime.gamma;

  return {std::move(prime), std::move(q), std::move(torsion), std::move(b),
          std::move(cconn)};
}

template <class T>
struct UniquenessVerdict {
  bool system_consistent = false;
  int solution_dim = -1;
  bool unique = false;
  bool matches_construction = false;
  T construction_residual;  // max |solved - constructed| when consistent
};

// Brute-force uniqueness check: over the finite space of 3-forms, impose the
// F-compatibility condition of a natural connection as a linear system and
// solve it by exact Gaussian elimination, independently of the closed-form
// construction.
template <class T>
UniquenessVerdict<T> uniqueness_oracle(const Manifold<T>& m) {
  const int n = m.dim();
  Tensor<T> f = fundamental_tensor(m, levi_civita(m)).f;
  const auto& j = m.j();

  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) triples.push_back({a, b, c});
  const int unknowns = static_cast<int>(triples.size());

  // three_form_coeff(x,y,z) -> (basis index, sign) or (-1, 0)
  auto coeff = [&](int x, int y, int z) -> std::pair<int, int> {
    if (x == y || y == z || x == z) return {-1, 0};
    std::array<int, 3> s{x, y, z};
    std::sort(s.begin(), s.end());
    int idx = -1;
    for (int t = 0; t < unknowns; ++t)
      if (triples[t] == s) {
        idx = t;
        break;
      }
    // parity of the permutation taking sorted -> (x,y,z)
    std::array<int, 3> perm{};
    for (int p = 0; p < 3; ++p) {
      int v = p == 0 ? x : (p == 1 ? y : z);
      for (int q = 0; q < 3; ++q)
        if (s[q] == v) perm[p] = q;
    }
    bool even = (perm == std::array<int, 3>{0, 1, 2}) ||
                (perm == std::array<int, 3>{1, 2, 0}) ||
                (perm == std::array<int, 3>{2, 0, 1});
    return {idx, even ? 1 : -1};
  };

  Matrix<T> a;
  std::vector<T> rhs;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        std::vector<T> row(unknowns, NumTraits<T>::zero());
        for (int mth = 0; mth < n; ++mth) {
          if (auto [i1, s1] = coeff(x, y, mth); i1 >= 0)
            row[i1] += j(mth, z) * NumTraits<T>::fraction(s1, 1);
          if (auto [i2, s2] = coeff(x, mth, z); i2 >= 0)
            row[i2] -= j(mth, y) * NumTraits<T>::fraction(s2, 1);
        }
        a.push_back(std::move(row));
        rhs.push_back(f(x, y, z));
      }

  LinearSolution<T> sol = solve_linear_system(std::move(a), std::move(rhs),
                                              m.tol());
  UniquenessVerdict<T> verdict;
  verdict.construction_residual = NumTraits<T>::zero();
  verdict.system_consistent = sol.consistent;
  if (!sol.consistent) return verdict;
  verdict.solution_dim = sol.nullity;
  verdict.unique = sol.nullity == 0;
  if (verdict.unique) {
    Tensor<T> q = build_q(m);
    for (int t = 0; t < unknowns; ++t) {
      auto [x, y, z] = triples[t];
      T diff = NumTraits<T>::abs(sol.particular[t] - q(x, y, z));
      if (diff > verdict.construction_residual)
        verdict.construction_residual = diff;
    }
    verdict.matches_construction =
        NumTraits<T>::is_zero(verdict.construction_residual, m.tol());
  }
  return verdict;
}

template <class T>
struct SkewConnectionReport {
  ManifoldClass classification = ManifoldClass::Other;
  bool projection_checks_apply = false;  // skipped for Kahler inputs
  NaturalityResiduals<T> naturality{};
  bool torsion_totally_skew = false;
  bool torsion_is_double_q = false;
  bool p1_zero = false, p3_zero = false;
  bool p2_nonzero = false, p4_nonzero = false;
  UniquenessVerdict<T> uniqueness{};
  bool b_is_three_quarters_prime = false;  // coefficient-table proportionality
  bool c_is_half_prime = false;

  bool all_passed() const {
    bool core = naturality_ok() && torsion_totally_skew && torsion_is_double_q &&
                uniqueness.system_consistent &&
                b_is_three_quarters_prime && c_is_half_prime;
    if (!projection_checks_apply) return core;
    return core && p1_zero && p3_zero && p2_nonzero && p4_nonzero &&
           uniqueness.unique && uniqueness.matches_construction;
  }
  bool naturality_ok() const {
    return NumTraits<T>::is_zero(naturality.j_residual) &&
           NumTraits<T>::is_zero(naturality.g_residual);
  }
};

// Aggregated verification battery for the skew-torsion natural connection on
// one manifold: classification, naturality, torsion shape, projection
// verdicts, brute-force uniqueness, and the B/C-connection proportionality.
template <class T>
SkewConnectionReport<T> skew_connection_report(const Manifold<T>& m) {
  SkewConnectionReport<T> rep;
  ClassVerdict<T> verdict = classify(m);
  rep.classification = verdict.cls;
  if (verdict.cls == ManifoldClass::Other) return rep;

  SkewConnectionBundle<T> bundle = build_bundle(m);
  const double tol = m.tol();
  rep.projection_checks_apply = verdict.cls != ManifoldClass::Kahler;
  rep.naturality = naturality_residuals(m, bundle.nabla_prime);
  Tensor<T> torsion_direct = torsion_of(m, bundle.nabla_prime);
  rep.torsion_totally_skew = is_three_form(torsion_direct, tol);
  rep.torsion_is_double_q = tensor_equal(torsion_direct, bundle.torsion, tol);

  TorsionProjections<T> proj = project_torsion(m, torsion_direct);
  rep.p1_zero = is_zero_tensor(proj.p1, tol);
  rep.p3_zero = is_zero_tensor(proj.p3, tol);
  rep.p2_nonzero = !is_zero_tensor(proj.p2, tol);
  rep.p4_nonzero = !is_zero_tensor(proj.p4, tol);

  rep.uniqueness = uniqueness_oracle(m);

  Tensor<T> b_expect = NumTraits<T>::fraction(3, 4) * bundle.nabla_prime.gamma;
  Tensor<T> c_expect = NumTraits<T>::fraction(1, 2) * bundle.nabla_prime.gamma;
  rep.b_is_three_quarters_prime =
      tensor_equal(bundle.b_conn.gamma, b_expect, tol);
  rep.c_is_half_prime = tensor_equal(bundle.c_conn.gamma, c_expect, tol);
  return rep;
}

}  // namespace norden
