#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "norden/linalg.hpp"
#include "norden/tensor.hpp"

namespace norden {

// Structure constants of the invariant frame: c(i,j,k) is the k-th component
// of the bracket of the i-th and j-th frame fields.
template <class T>
struct LieAlgebra {
  int dim = 0;
  Tensor<T> c;  // valence (co, co, contra)

  static LieAlgebra zero(int dim) {
    return {dim, Tensor<T>(dim, {Variance::Co, Variance::Co, Variance::Contra})};
  }
};

// Raw input: algebra plus the almost complex structure and metric on the
// frame. Derived data (inverse and associated metric) lives on Manifold and
// is only constructed after validation.
template <class T>
struct ManifoldSpec {
  LieAlgebra<T> algebra;
  Tensor<T> j;  // valence (contra, co): column j holds the image of X_j
  Tensor<T> g;  // valence (co, co)
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::vector<int> first_violation;  // 1-based frame indices, empty if none
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  Signature metric_signature;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report)
      : std::runtime_error(report.first_failure()
                               ? "manifold validation failed: " +
                                     report.first_failure()->name
                               : "manifold validation failed"),
        report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

namespace detail {

inline std::vector<int> shift_1based(std::initializer_list<int> idx) {
  std::vector<int> out;
  for (int v : idx) out.push_back(v + 1);
  return out;
}

}  // namespace detail

// Runs every structural invariant and reports pass/fail per check with the
// first violating frame tuple (1-based). Failures are reported, not thrown;
// only malformed shapes throw.
template <class T>
ValidationReport validate(const ManifoldSpec<T>& spec,
                          double tol = kDefaultTol) {
  const int dim = spec.algebra.dim;
  if (dim < 2 || dim % 2 != 0)
    throw std::invalid_argument("frame size must be even and >= 2");
  if (spec.algebra.c.dim() != dim || spec.algebra.c.rank() != 3 ||
      spec.j.dim() != dim || spec.j.rank() != 2 || spec.g.dim() != dim ||
      spec.g.rank() != 2)
    throw std::invalid_argument("manifold spec shape mismatch");

  ValidationReport report;
  const auto& c = spec.algebra.c;
  const auto& j = spec.j;
  const auto& g = spec.g;
  auto zero = [&](const T& v) { return NumTraits<T>::is_zero(v, tol); };

  {
    CheckResult r{"bracket-antisymmetry", true, {}, ""};
    for (int a = 0; a < dim && r.passed; ++a)
      for (int b = 0; b < dim && r.passed; ++b)
        for (int k = 0; k < dim && r.passed; ++k)
          if (!zero(c(a, b, k) + c(b, a, k))) {
            r.passed = false;
            r.first_violation = detail::shift_1based({a, b, k});
          }
    report.checks.push_back(std::move(r));
  }
  {
    CheckResult r{"jacobi-identity", true, {}, ""};
    for (int a = 0; a < dim && r.passed; ++a)
      for (int b = 0; b < dim && r.passed; ++b)
        for (int s = 0; s < dim && r.passed; ++s)
          for (int l = 0; l < dim && r.passed; ++l) {
            T acc = NumTraits<T>::zero();
            for (int k = 0; k < dim; ++k)
              acc += c(a, b, k) * c(k, s, l) + c(b, s, k) * c(k, a, l) +
                     c(s, a, k) * c(k, b, l);
            if (!zero(acc)) {
              r.passed = false;
              r.first_violation = detail::shift_1based({a, b, s, l});
            }
          }
    report.checks.push_back(std::move(r));
  }
  {
    CheckResult r{"j-squared-is-minus-identity", true, {}, ""};
    for (int a = 0; a < dim && r.passed; ++a)
      for (int b = 0; b < dim && r.passed; ++b) {
        T acc = a == b ? NumTraits<T>::one() : NumTraits<T>::zero();
        for (int m = 0; m < dim; ++m) acc += j(a, m) * j(m, b);
        if (!zero(acc)) {
          r.passed = false;
          r.first_violation = detail::shift_1based({a, b});
        }
      }
    report.checks.push_back(std::move(r));
  }
  {
    CheckResult r{"metric-symmetry", true, {}, ""};
    for (int a = 0; a < dim && r.passed; ++a)
      for (int b = a + 1; b < dim && r.passed; ++b)
        if (!zero(g(a, b) - g(b, a))) {
          r.passed = false;
          r.first_violation = detail::shift_1based({a, b});
        }
    report.checks.push_back(std::move(r));
  }
  {
    Matrix<T> gm(dim, std::vector<T>(dim));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) gm[a][b] = g(a, b);
    report.metric_signature = symmetric_signature(std::move(gm), tol);
    const auto& sig = report.metric_signature;
    CheckResult nd{"metric-nondegenerate", sig.zero == 0, {}, ""};
    if (!nd.passed) nd.detail = "zero pivot in Lagrange reduction";
    report.checks.push_back(std::move(nd));
    CheckResult sg{"metric-signature-split", true, {}, ""};
    sg.passed = sig.positive == dim / 2 && sig.negative == dim / 2;
    sg.detail = "(" + std::to_string(sig.positive) + "," +
                std::to_string(sig.negative) + "," + std::to_string(sig.zero) +
                ")";
    report.checks.push_back(std::move(sg));
  }
  {
    CheckResult r{"norden-anti-isometry", true, {}, ""};
    for (int a = 0; a < dim && r.passed; ++a)
      for (int b = 0; b < dim && r.passed; ++b) {
        T acc = g(a, b);
        for (int p = 0; p < dim; ++p)
          for (int q = 0; q < dim; ++q) acc += j(p, a) * j(q, b) * g(p, q);
        if (!zero(acc)) {
          r.passed = false;
          r.first_violation = detail::shift_1based({a, b});
        }
      }
    report.checks.push_back(std::move(r));
  }
  {
    CheckResult r{"associated-metric-symmetry", true, {}, ""};
    for (int a = 0; a < dim && r.passed; ++a)
      for (int b = a + 1; b < dim && r.passed; ++b) {
        T gab = NumTraits<T>::zero();
        T gba = NumTraits<T>::zero();
        for (int m = 0; m < dim; ++m) {
          gab += g(a, m) * j(m, b);
          gba += g(b, m) * j(m, a);
        }
        if (!zero(gab - gba)) {
          r.passed = false;
          r.first_violation = detail::shift_1based({a, b});
        }
      }
    report.checks.push_back(std::move(r));
  }
  return report;
}

// A validated spec plus the derived Norden data. Downstream geometry only
// accepts this type, which keeps validation eager.
template <class T>
class Manifold {
 public:
  static Manifold validated(ManifoldSpec<T> spec, double tol = kDefaultTol) {
    ValidationReport report = validate(spec, tol);
    if (!report.all_passed()) throw ValidationError(std::move(report));
    const int dim = spec.algebra.dim;
    Matrix<T> gm(dim, std::vector<T>(dim));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) gm[a][b] = spec.g(a, b);
    auto inv = invert(std::move(gm), tol);
    if (!inv) throw ValidationError(std::move(report));  // guarded by signature
    Tensor<T> g_inv(dim, {Variance::Contra, Variance::Contra});
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) g_inv(a, b) = (*inv)[a][b];
    Tensor<T> g_assoc(dim, covariant(2));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        T acc = NumTraits<T>::zero();
        for (int m = 0; m < dim; ++m) acc += spec.g(a, m) * spec.j(m, b);
        g_assoc(a, b) = acc;
      }
    return Manifold(std::move(spec), std::move(g_inv), std::move(g_assoc),
                    std::move(report), tol);
  }

  int dim() const { return spec_.algebra.dim; }
  double tol() const { return tol_; }
  const Tensor<T>& structure() const { return spec_.algebra.c; }
  const Tensor<T>& j() const { return spec_.j; }
  const Tensor<T>& g() const { return spec_.g; }
  const Tensor<T>& g_inv() const { return g_inv_; }
  const Tensor<T>& g_assoc() const { return g_assoc_; }
  const ValidationReport& report() const { return report_; }
  const ManifoldSpec<T>& spec() const { return spec_; }

  // bilinear antisymmetric extension of the structure constants
  std::vector<T> bracket(std::span<const T> x, std::span<const T> y) const {
    const int n = dim();
    std::vector<T> out(n, NumTraits<T>::zero());
    for (int a = 0; a < n; ++a) {
      if (NumTraits<T>::is_zero(x[a], 0.0)) continue;
      for (int b = 0; b < n; ++b) {
        if (NumTraits<T>::is_zero(y[b], 0.0)) continue;
        for (int k = 0; k < n; ++k)
          out[k] += spec_.algebra.c(a, b, k) * x[a] * y[b];
      }
    }
    return out;
  }

  std::vector<T> apply_j(std::span<const T> x) const {
    const int n = dim();
    std::vector<T> out(n, NumTraits<T>::zero());
    for (int m = 0; m < n; ++m)
      for (int a = 0; a < n; ++a) out[m] += spec_.j(m, a) * x[a];
    return out;
  }

  T metric(std::span<const T> x, std::span<const T> y) const {
    const int n = dim();
    T acc = NumTraits<T>::zero();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc += spec_.g(a, b) * x[a] * y[b];
    return acc;
  }

  std::vector<T> frame_vector(int i) const {
    std::vector<T> v(dim(), NumTraits<T>::zero());
    v[i] = NumTraits<T>::one();
    return v;
  }

 private:
  Manifold(ManifoldSpec<T> spec, Tensor<T> g_inv, Tensor<T> g_assoc,
           ValidationReport report, double tol)
      : spec_(std::move(spec)), g_inv_(std::move(g_inv)),
        g_assoc_(std::move(g_assoc)), report_(std::move(report)), tol_(tol) {}

  ManifoldSpec<T> spec_;
  Tensor<T> g_inv_;
  Tensor<T> g_assoc_;
  ValidationReport report_;
  double tol_;
};

// Maximum over frame triples of |g([Xi,Xj],JXk) + g([Xi,Xk],JXj)|; zero iff
// the associated metric is Killing.
template <class T>
T killing_residual(const Manifold<T>& m) {
  const int n = m.dim();
  const auto& c = m.structure();
  const auto& g = m.g();
  const auto& j = m.j();
  T worst = NumTraits<T>::zero();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        T acc = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            acc += c(a, b, p) * g(p, q) * j(q, k) +
                   c(a, k, p) * g(p, q) * j(q, b);
        T mag = NumTraits<T>::abs(acc);
        if (mag > worst) worst = mag;
      }
  return worst;
}

}  // namespace norden
