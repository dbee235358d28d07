#pragma once

#include <functional>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "norden/json_io.hpp"
#include "norden/report.hpp"

namespace norden {

inline constexpr std::uint64_t kPaperSuiteSeed = 0x6e6f7264656eULL;

struct VerifyOptions {
  enum class Suite { Paper, Random };
  Suite suite = Suite::Paper;
  std::uint64_t seed = kPaperSuiteSeed;
  int samples = 100;
  int jobs = 1;
  ScalarMode mode = ScalarMode::Rational;
  std::string fault;  // test hook: injects a defect to exercise failure paths
};

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<CheckOutcome> checks;
  bool all_passed = true;
  std::string first_failure;
  json report;
};

namespace detail {

// Runs fn(sample) over [0, n), fanning out over jobs threads; failures are
// merged by sample index so the outcome is independent of scheduling.
template <class Fn>
std::optional<std::string> scan_samples(int n, int jobs, Fn&& fn) {
  std::vector<std::optional<std::string>> failures(n);
  if (jobs <= 1) {
    for (int s = 0; s < n; ++s) failures[s] = fn(s);
  } else {
    const int workers = std::min(jobs, n > 0 ? n : 1);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int s = w; s < n; s += workers) failures[s] = fn(s);
      });
    for (auto& t : pool) t.join();
  }
  for (int s = 0; s < n; ++s)
    if (failures[s])
      return "sample " + std::to_string(s) + ": " + *failures[s];
  return std::nullopt;
}

template <class T>
std::string lambda_str(const std::array<T, 4>& l) {
  std::string out = "(";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ",";
    out += NumTraits<T>::str(l[i]);
  }
  return out + ")";
}

// dim-n abelian manifold with the standard block complex structure and split
// diagonal metric; used as the J/g environment for synthetic-tensor checks.
template <class T>
Manifold<T> standard_manifold(int dim) {
  const int half = dim / 2;
  LieAlgebra<T> algebra = LieAlgebra<T>::zero(dim);
  Tensor<T> j(dim, {Variance::Contra, Variance::Co});
  Tensor<T> g(dim, covariant(2));
  for (int a = 0; a < half; ++a) {
    j(a + half, a) = NumTraits<T>::one();
    j(a, a + half) = -NumTraits<T>::one();
    g(a, a) = NumTraits<T>::one();
    g(a + half, a + half) = -NumTraits<T>::one();
  }
  return Manifold<T>::validated({std::move(algebra), std::move(j), std::move(g)});
}

template <class T>
FamilyParams<T> sample_lambda(std::uint64_t seed, int sample, bool nonzero) {
  SplitMix64 rng = SplitMix64::for_sample(seed, sample);
  auto arr = random_lambda<T>(rng, nonzero);
  return FamilyParams<T>{arr};
}

// ---------------------------------------------------------------- checks ---

template <class T>
CheckOutcome check_golden_tables(const VerifyOptions& o) {
  CheckOutcome out{"golden-tables", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<Rational> p = sample_lambda<Rational>(o.seed, s, false);
    // exact comparison in rational mode
    Manifold<Rational> m = family_manifold(p);
    Connection<Rational> lc = levi_civita(m);
    GoldenTables<Rational> golden = golden_tables(p);
    if (o.fault == "golden-f" && s == 0)
      golden.f(0, 0, 0) += Rational(1);
    if (!tensor_equal(fundamental_tensor(m, lc).f, golden.f))
      return "F table mismatch at lambda=" + lambda_str(p.lambda);
    if (!tensor_equal(nabla_j(m, lc), golden.nabla_j))
      return "nabla-J table mismatch at lambda=" + lambda_str(p.lambda);
    SkewConnectionBundle<Rational> bundle = build_bundle(m);
    if (!tensor_equal(bundle.torsion, golden.torsion))
      return "torsion table mismatch at lambda=" + lambda_str(p.lambda);
    if (!tensor_equal(bundle.nabla_prime.gamma, golden.nabla_prime))
      return "connection table mismatch at lambda=" + lambda_str(p.lambda);
    // float mode within tolerance, same sample values
    FamilyParams<double> pf;
    for (int i = 0; i < 4; ++i)
      pf.lambda[i] = NumTraits<Rational>::to_double(p.lambda[i]);
    FamilyReport<double> fr = family_report(pf);
    if (!fr.golden_all())
      return "float-mode table mismatch at lambda=" + lambda_str(p.lambda);
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) +
                 " samples, exact rational + 1e-9 float agreement";
  }
  return out;
}

template <class T>
CheckOutcome check_square_norm_law(const VerifyOptions& o) {
  CheckOutcome out{"square-norm-law", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, false);
    Manifold<T> m = family_manifold(p);
    T norm;
    try {
      norm = square_norm_nabla_j(m);  // also checks the two routes agree
    } catch (const InternalConsistencyError& e) {
      return std::string(e.what());
    }
    T locus = p.lambda[0] * p.lambda[0] + p.lambda[1] * p.lambda[1] -
              p.lambda[2] * p.lambda[2] - p.lambda[3] * p.lambda[3];
    T expect = NumTraits<T>::fraction(-4, 1) * locus;
    if (!NumTraits<T>::equal(norm, expect, m.tol()))
      return "norm law violated at lambda=" + lambda_str(p.lambda) + ": " +
             NumTraits<T>::str(norm) + " vs " + NumTraits<T>::str(expect);
    if (is_isotropic_kahler(m) != NumTraits<T>::is_zero(locus, m.tol()))
      return "isotropic verdict off the locus at lambda=" +
             lambda_str(p.lambda);
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) + " samples, both routes agree";
  }
  return out;
}

template <class T>
CheckOutcome check_skew_connection_battery(const VerifyOptions& o) {
  CheckOutcome out{"skew-connection-battery", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, true);
    Manifold<T> m = family_manifold(p);
    SkewConnectionReport<T> rep = skew_connection_report(m);
    auto at = [&](const char* what) {
      return std::string(what) + " at lambda=" + lambda_str(p.lambda);
    };
    if (!rep.naturality_ok()) return at("connection not natural");
    if (!rep.torsion_totally_skew) return at("torsion not totally skew");
    if (!rep.torsion_is_double_q) return at("torsion differs from 2Q");
    if (!rep.p1_zero) return at("p1 projection nonzero");
    if (!rep.p3_zero) return at("p3 projection nonzero");
    if (!rep.p2_nonzero) return at("p2 projection zero");
    if (!rep.p4_nonzero) return at("p4 projection zero");
    if (!rep.uniqueness.system_consistent) return at("linear system inconsistent");
    if (!rep.uniqueness.unique) return at("solution space not a point");
    if (!rep.uniqueness.matches_construction)
      return at("solved transform differs from construction");
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) + " nonzero samples";
  }
  return out;
}

template <class T>
CheckOutcome check_connection_proportionality(const VerifyOptions& o) {
  CheckOutcome out{"connection-proportionality", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, false);
    Manifold<T> m = family_manifold(p);
    SkewConnectionBundle<T> bundle = build_bundle(m);
    Tensor<T> b_expect =
        NumTraits<T>::fraction(3, 4) * bundle.nabla_prime.gamma;
    Tensor<T> c_expect =
        NumTraits<T>::fraction(1, 2) * bundle.nabla_prime.gamma;
    if (!tensor_equal(bundle.b_conn.gamma, b_expect, m.tol()))
      return "B-connection ratio broken at lambda=" + lambda_str(p.lambda);
    if (!tensor_equal(bundle.c_conn.gamma, c_expect, m.tol()))
      return "C-connection ratio broken at lambda=" + lambda_str(p.lambda);
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) +
                 " samples, exact coefficient-table equality";
  }
  return out;
}

template <class T>
CheckOutcome check_kahler_curvature_locus(const VerifyOptions& o) {
  CheckOutcome out{"kahler-curvature-locus", true, ""};
  std::vector<FamilyParams<T>> points;
  auto fr = [](long n, long d = 1) { return NumTraits<T>::fraction(n, d); };
  points.push_back({{fr(3), fr(4), fr(5), fr(0)}});  // on the locus
  for (long k = 1; k <= 9; ++k)
    points.push_back({{fr(k), fr(k + 1), fr(k + 1), fr(k)}});  // on the locus
  points.push_back({{fr(1), fr(0), fr(0), fr(0)}});  // off the locus
  for (long k = 2; k <= 10; ++k)
    points.push_back({{fr(k), fr(1), fr(0), fr(k - 1)}});  // off the locus
  auto fail = detail::scan_samples(
      static_cast<int>(points.size()), o.jobs,
      [&](int s) -> std::optional<std::string> {
        const FamilyParams<T>& p = points[s];
        FamilyReport<T> rep = family_report(p);
        if (!rep.kahler_iff_locus)
          return "Kahler verdict does not match the locus at lambda=" +
                 lambda_str(p.lambda) + " (kahler=" +
                 (rep.kahler_curvature.kahler ? "true" : "false") +
                 ", bianchi_residual=" +
                 NumTraits<T>::str(rep.kahler_curvature.bianchi_residual) +
                 ", j_residual=" +
                 NumTraits<T>::str(rep.kahler_curvature.j_residual) + ")";
        if (!rep.criterion_matches_kahler)
          return "cyclic criterion disagrees with the Kahler verdict at "
                 "lambda=" +
                 lambda_str(p.lambda) + " (criterion_residual=" +
                 NumTraits<T>::str(rep.curvature_criterion_residual) + ")";
        return std::nullopt;
      });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = "10 points each side of the locus";
  }
  return out;
}

template <class T>
CheckOutcome check_scalar_twisted_trace(const VerifyOptions& o) {
  CheckOutcome out{"scalar-curvature-twisted-trace", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, false);
    Manifold<T> m = family_manifold(p);
    CurvatureData<T> cv = riemann(m, levi_civita(m));
    T norm = square_norm_nabla_j(m);
    T lhs = cv.scalar_star_star + cv.scalar;
    T rhs = NumTraits<T>::fraction(-1, 2) * norm;
    if (!NumTraits<T>::equal(lhs, rhs, m.tol()))
      return "twisted trace relation broken at lambda=" +
             lambda_str(p.lambda) + ": " + NumTraits<T>::str(lhs) + " vs " +
             NumTraits<T>::str(rhs);
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) + " samples";
  }
  return out;
}

template <class T>
CheckOutcome check_curvature_transform_relation(const VerifyOptions& o) {
  CheckOutcome out{"curvature-transform-relation", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, false);
    Manifold<T> m = family_manifold(p);
    SkewConnectionBundle<T> bundle = build_bundle(m);
    T residual = curvature_relation_residual(m, bundle);
    if (!NumTraits<T>::is_zero(residual, m.tol()))
      return "relation residual " + NumTraits<T>::str(residual) +
             " at lambda=" + lambda_str(p.lambda);
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) + " samples, residual 0";
  }
  return out;
}

template <class T>
CheckOutcome check_no_parallel_torsion(const VerifyOptions& o) {
  CheckOutcome out{"no-parallel-torsion-on-family", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, true);
    Manifold<T> m = family_manifold(p);
    SkewConnectionBundle<T> bundle = build_bundle(m);
    Tensor<T> dpt =
        covariant_derivative(m, bundle.nabla_prime, bundle.torsion);
    if (is_zero_tensor(dpt, m.tol()))
      return "parallel torsion found at lambda=" + lambda_str(p.lambda);
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) +
                 " nonzero samples (sampling evidence, not a proof)";
  }
  return out;
}

template <class T>
CheckOutcome check_skew_square_algebra(const VerifyOptions& o) {
  CheckOutcome out{"skew-square-bianchi-algebra", true, ""};
  SkewSquareAlgebraReport<T> r4 = skew_square_algebra_check<T>(4, 50, o.seed);
  SkewSquareAlgebraReport<T> r6 =
      skew_square_algebra_check<T>(6, 20, o.seed + 1);
  if (!r4.passed || !r6.passed) {
    out.passed = false;
    out.detail = "dim4 cyclic residual " +
                 NumTraits<T>::str(r4.cyclic_multiple_residual) +
                 ", reduction " + NumTraits<T>::str(r4.reduction_residual) +
                 "; dim6 cyclic residual " +
                 NumTraits<T>::str(r6.cyclic_multiple_residual) +
                 ", reduction " + NumTraits<T>::str(r6.reduction_residual);
  } else {
    out.detail = "50 dim-4 and 20 dim-6 synthetic 3-forms";
  }
  return out;
}

template <class T>
CheckOutcome check_contraction_identity(const VerifyOptions& o) {
  CheckOutcome out{"contraction-identity", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, false);
    Manifold<T> m = family_manifold(p);
    SkewConnectionBundle<T> bundle = build_bundle(m);
    ContractionIdentityReport<T> rep = contraction_identity_check(m, bundle);
    if (!rep.stated_identity_holds)
      return "stated -1/8 identity fails at lambda=" + lambda_str(p.lambda) +
             ": contraction=" + NumTraits<T>::str(rep.contraction_value) +
             ", square_norm=" + NumTraits<T>::str(rep.square_norm) +
             ", measured -1/2 residual=" +
             NumTraits<T>::str(rep.measured_identity_residual);
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) + " samples";
  }
  return out;
}

template <class T>
CheckOutcome check_torsion_decomposition(const VerifyOptions& o) {
  CheckOutcome out{"torsion-decomposition", true, ""};
  Manifold<T> m4 = standard_manifold<T>(4);
  Manifold<T> m6 = standard_manifold<T>(6);
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    SplitMix64 rng = SplitMix64::for_sample(o.seed ^ 0x5eedULL, s);
    const Manifold<T>& m = (s % 2 == 0) ? m4 : m6;
    Tensor<T> t = random_skew_tensor<T>(rng, m.dim());
    TorsionProjections<T> proj = project_torsion(m, t);
    Tensor<T> sum = proj.p1;
    sum += proj.p2;
    sum += proj.p3;
    sum += proj.p4;
    if (!tensor_equal(sum, t, m.tol()))
      return "decomposition broken in dim " + std::to_string(m.dim());
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) +
                 " random skew tensors, dims 4 and 6 alternating";
  }
  return out;
}

template <class T>
CheckOutcome check_family_validation(const VerifyOptions& o) {
  CheckOutcome out{"family-validation", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, false);
    ManifoldSpec<T> spec = family_spec(p);
    ValidationReport rep = validate(spec);
    if (!rep.all_passed())
      return "validation failed at lambda=" + lambda_str(p.lambda) + ": " +
             rep.first_failure()->name;
    Manifold<T> m = Manifold<T>::validated(std::move(spec));
    if (!NumTraits<T>::is_zero(killing_residual(m), m.tol()))
      return "Killing residual nonzero at lambda=" + lambda_str(p.lambda);
    ClassVerdict<T> verdict = classify(m);
    if (verdict.cls == ManifoldClass::Other)
      return "family classified as other at lambda=" + lambda_str(p.lambda);
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) +
                 " samples: all invariants, Killing residual 0";
  }
  return out;
}

template <class T>
CheckOutcome check_f_properties(const VerifyOptions& o) {
  CheckOutcome out{"fundamental-tensor-properties", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    FamilyParams<T> p = sample_lambda<T>(o.seed, s, false);
    Manifold<T> m = family_manifold(p);
    Tensor<T> f = fundamental_tensor(m, levi_civita(m)).f;
    const auto& j = m.j();
    const int n = m.dim();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          if (!NumTraits<T>::equal(f(x, y, z), f(x, z, y), m.tol()))
            return "last-two-slot symmetry broken";
          T f_jy_jz = NumTraits<T>::zero();
          T f_jy_z = NumTraits<T>::zero();
          T f_y_jz = NumTraits<T>::zero();
          for (int a = 0; a < n; ++a) {
            f_jy_z += j(a, y) * f(x, a, z);
            f_y_jz += j(a, z) * f(x, y, a);
            for (int b = 0; b < n; ++b)
              f_jy_jz += j(a, y) * j(b, z) * f(x, a, b);
          }
          if (!NumTraits<T>::equal(f(x, y, z), f_jy_jz, m.tol()))
            return "double J-twist symmetry broken";
          if (!NumTraits<T>::is_zero(f_jy_z + f_y_jz, m.tol()))
            return "single J-twist antisymmetry broken";
        }
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) + " samples, all three identities";
  }
  return out;
}

template <class T>
CheckOutcome check_hayden_reconstruction(const VerifyOptions& o) {
  CheckOutcome out{"hayden-reconstruction", true, ""};
  auto fail = detail::scan_samples(o.samples, o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    SplitMix64 rng = SplitMix64::for_sample(o.seed ^ 0x4a1dULL, s);
    Tensor<T> t = random_skew_tensor<T>(rng, 4);
    Tensor<T> q = hayden_transform(t);
    const int n = 4;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (!NumTraits<T>::equal(q(x, y, z) - q(y, x, z), t(x, y, z)))
            return "transform does not reproduce the torsion";
    Tensor<T> form = random_three_form<T>(rng, 4);
    Tensor<T> qf = hayden_transform(form);
    Tensor<T> half_form = NumTraits<T>::fraction(1, 2) * form;
    if (!tensor_equal(qf, half_form))
      return "totally skew torsion does not halve";
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail = std::to_string(o.samples) + " random skew tensors";
  }
  return out;
}

template <class T>
CheckOutcome check_projector_idempotence(const VerifyOptions& o) {
  // exploratory suite: violations are logged as findings, never as failures
  CheckOutcome out{"projector-idempotence", true, ""};
  int violations = 0;
  Manifold<T> m4 = standard_manifold<T>(4);
  Manifold<T> m6 = standard_manifold<T>(6);
  const int samples = std::min(o.samples, 40);
  for (int s = 0; s < samples; ++s) {
    SplitMix64 rng = SplitMix64::for_sample(o.seed ^ 0x1de3ULL, s);
    const Manifold<T>& m = (s % 2 == 0) ? m4 : m6;
    Tensor<T> t = random_skew_tensor<T>(rng, m.dim());
    TorsionProjections<T> proj = project_torsion(m, t);
    const Tensor<T>* parts[4] = {&proj.p1, &proj.p2, &proj.p3, &proj.p4};
    for (int i = 0; i < 4; ++i) {
      TorsionProjections<T> again = project_torsion(m, *parts[i]);
      const Tensor<T>* reparts[4] = {&again.p1, &again.p2, &again.p3,
                                     &again.p4};
      for (int j = 0; j < 4; ++j) {
        bool ok = (i == j) ? tensor_equal(*reparts[j], *parts[i], m.tol())
                           : is_zero_tensor(*reparts[j], m.tol());
        if (!ok) ++violations;
      }
    }
  }
  out.detail = violations == 0
                   ? "no violations found (" + std::to_string(samples) +
                         " samples, dims 4 and 6): the four projectors act "
                         "as orthogonal idempotents on every sample"
                   : std::to_string(violations) +
                         " violations found; logged as findings";
  return out;
}

template <class T>
CheckOutcome check_dim4_cyclic_degeneracy(const VerifyOptions& o) {
  CheckOutcome out{"dim4-cyclic-degeneracy", true, ""};
  auto fail = detail::scan_samples(std::min(o.samples, 50), o.jobs,
                                   [&](int s) -> std::optional<std::string> {
    SplitMix64 rng = SplitMix64::for_sample(o.seed ^ 0xd14cULL, s);
    Tensor<T> g = random_metric_nn<T>(rng, 4);
    Tensor<T> q = random_three_form<T>(rng, 4);
    Matrix<T> gm(4, std::vector<T>(4));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) gm[a][b] = g(a, b);
    auto inv = invert(std::move(gm));
    if (!inv) return std::string("synthetic metric not invertible");
    auto g_qq = [&](int x, int y, int z, int w) -> T {
      T acc = NumTraits<T>::zero();
      for (int p = 0; p < 4; ++p)
        for (int r = 0; r < 4; ++r)
          acc += q(x, y, p) * (*inv)[p][r] * q(z, w, r);
      return acc;
    };
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 4; ++z)
          for (int w = 0; w < 4; ++w) {
            T cyc = g_qq(x, y, z, w) + g_qq(y, z, x, w) + g_qq(z, x, y, w);
            if (!NumTraits<T>::is_zero(cyc, kDefaultTol))
              return std::string(
                  "cyclic product of a dim-4 3-form failed to vanish");
          }
    return std::nullopt;
  });
  if (fail) {
    out.passed = false;
    out.detail = *fail;
  } else {
    out.detail =
        "every 3-form in dim 4 has identically vanishing cyclic product";
  }
  return out;
}

template <class T>
std::vector<CheckOutcome> run_battery_t(const VerifyOptions& o) {
  std::vector<CheckOutcome> checks;
  checks.push_back(check_golden_tables<T>(o));
  checks.push_back(check_square_norm_law<T>(o));
  checks.push_back(check_skew_connection_battery<T>(o));
  checks.push_back(check_connection_proportionality<T>(o));
  checks.push_back(check_kahler_curvature_locus<T>(o));
  checks.push_back(check_scalar_twisted_trace<T>(o));
  checks.push_back(check_curvature_transform_relation<T>(o));
  checks.push_back(check_no_parallel_torsion<T>(o));
  checks.push_back(check_skew_square_algebra<T>(o));
  checks.push_back(check_contraction_identity<T>(o));
  checks.push_back(check_torsion_decomposition<T>(o));
  checks.push_back(check_family_validation<T>(o));
  checks.push_back(check_f_properties<T>(o));
  checks.push_back(check_hayden_reconstruction<T>(o));
  checks.push_back(check_projector_idempotence<T>(o));
  checks.push_back(check_dim4_cyclic_degeneracy<T>(o));
  return checks;
}

}  // namespace detail

inline VerifyResult finalize_result(std::vector<CheckOutcome> checks,
                                    const VerifyOptions& o,
                                    const std::string& digest_src) {
  VerifyResult result;
  result.checks = std::move(checks);
  for (const auto& c : result.checks)
    if (!c.passed) {
      result.all_passed = false;
      if (result.first_failure.empty()) result.first_failure = c.name;
    }
  json checks_json = json::array();
  for (const auto& c : result.checks)
    checks_json.push_back(
        json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  result.report = json{
      {"suite", o.suite == VerifyOptions::Suite::Paper ? "paper" : "random"},
      {"mode", to_string(o.mode)},
      {"seed", o.seed},
      {"samples", o.samples},
      {"digest", fnv1a_digest(digest_src)},
      {"checks", std::move(checks_json)},
      {"all_passed", result.all_passed},
      {"first_failure",
       result.first_failure.empty() ? json(nullptr)
                                    : json(result.first_failure)}};
  return result;
}

inline VerifyResult run_battery(const VerifyOptions& o) {
  std::string digest_src =
      std::string(o.suite == VerifyOptions::Suite::Paper ? "paper" : "random") +
      ":" + std::to_string(o.seed) + ":" + std::to_string(o.samples) + ":" +
      to_string(o.mode);
  std::vector<CheckOutcome> checks =
      o.mode == ScalarMode::Rational
          ? detail::run_battery_t<Rational>(o)
          : detail::run_battery_t<double>(o);
  return finalize_result(std::move(checks), o, digest_src);
}

// Runs one named battery check (used by the per-criterion acceptance runner).
inline CheckOutcome run_single_check(const std::string& name,
                                     const VerifyOptions& o) {
  auto run = [&](auto tag) -> CheckOutcome {
    using T = decltype(tag);
    if (name == "golden-tables") return detail::check_golden_tables<T>(o);
    if (name == "square-norm-law") return detail::check_square_norm_law<T>(o);
    if (name == "skew-connection-battery")
      return detail::check_skew_connection_battery<T>(o);
    if (name == "connection-proportionality")
      return detail::check_connection_proportionality<T>(o);
    if (name == "kahler-curvature-locus")
      return detail::check_kahler_curvature_locus<T>(o);
    if (name == "scalar-curvature-twisted-trace")
      return detail::check_scalar_twisted_trace<T>(o);
    if (name == "curvature-transform-relation")
      return detail::check_curvature_transform_relation<T>(o);
    if (name == "no-parallel-torsion-on-family")
      return detail::check_no_parallel_torsion<T>(o);
    if (name == "skew-square-bianchi-algebra")
      return detail::check_skew_square_algebra<T>(o);
    if (name == "contraction-identity")
      return detail::check_contraction_identity<T>(o);
    if (name == "torsion-decomposition")
      return detail::check_torsion_decomposition<T>(o);
    if (name == "family-validation")
      return detail::check_family_validation<T>(o);
    if (name == "fundamental-tensor-properties")
      return detail::check_f_properties<T>(o);
    if (name == "hayden-reconstruction")
      return detail::check_hayden_reconstruction<T>(o);
    if (name == "projector-idempotence")
      return detail::check_projector_idempotence<T>(o);
    if (name == "dim4-cyclic-degeneracy")
      return detail::check_dim4_cyclic_degeneracy<T>(o);
    throw std::invalid_argument("unknown check: " + name);
  };
  return o.mode == ScalarMode::Rational ? run(Rational()) : run(0.0);
}

// Verification battery for a user-supplied manifold (file input).
template <class T>
VerifyResult run_spec_battery(const ManifoldSpec<T>& spec,
                              const VerifyOptions& o,
                              const std::string& digest_src) {
  std::vector<CheckOutcome> checks;
  ValidationReport vrep = validate(spec);
  checks.push_back({"validation",
                    vrep.all_passed(),
                    vrep.all_passed()
                        ? "all invariants hold"
                        : "first failure: " + vrep.first_failure()->name});
  if (!vrep.all_passed())
    return finalize_result(std::move(checks), o, digest_src);

  Manifold<T> m = Manifold<T>::validated(spec);
  ClassVerdict<T> verdict = classify(m);
  checks.push_back({"classification", true,
                    std::string(to_string(verdict.cls)) + " (max |F| = " +
                        NumTraits<T>::str(verdict.max_f) +
                        ", max cyclic = " +
                        NumTraits<T>::str(verdict.max_cyclic) + ")"});
  {
    CheckOutcome c{"square-norm-routes", true, ""};
    try {
      T norm = square_norm_nabla_j(m);
      c.detail = "square norm = " + NumTraits<T>::str(norm);
    } catch (const InternalConsistencyError& e) {
      c.passed = false;
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  }
  checks.push_back({"killing-residual", true,
                    "residual = " + NumTraits<T>::str(killing_residual(m))});

  if (verdict.cls == ManifoldClass::Other) {
    CheckOutcome c{"skew-connection", true, ""};
    try {
      build_q(m);
      c.passed = false;
      c.detail = "construction unexpectedly succeeded on class other";
    } catch (const NotQuasiKahlerError&) {
      c.detail = "refused: no such connection exists outside quasi-Kahler";
    }
    checks.push_back(std::move(c));
    return finalize_result(std::move(checks), o, digest_src);
  }

  SkewConnectionReport<T> sk = skew_connection_report(m);
  {
    CheckOutcome c{"skew-connection", true, ""};
    bool ok = sk.naturality_ok() && sk.torsion_totally_skew &&
              sk.torsion_is_double_q && sk.uniqueness.system_consistent;
    if (sk.projection_checks_apply)
      ok = ok && sk.p1_zero && sk.p3_zero && sk.p2_nonzero && sk.p4_nonzero &&
           sk.uniqueness.unique && sk.uniqueness.matches_construction;
    c.passed = ok;
    c.detail = sk.projection_checks_apply
                   ? "natural, totally skew torsion, unique"
                   : "Kahler input: transform vanishes, projection checks "
                     "skipped";
    if (!ok) c.detail = "battery failed; see report";
    checks.push_back(std::move(c));
  }
  SkewConnectionBundle<T> bundle = build_bundle(m);
  {
    T residual = curvature_relation_residual(m, bundle);
    checks.push_back({"curvature-transform-relation",
                      NumTraits<T>::is_zero(residual, m.tol()),
                      "residual = " + NumTraits<T>::str(residual)});
  }
  {
    TorsionProjections<T> proj = project_torsion(m, bundle.torsion);
    Tensor<T> sum = proj.p1;
    sum += proj.p2;
    sum += proj.p3;
    sum += proj.p4;
    checks.push_back({"torsion-decomposition",
                      tensor_equal(sum, bundle.torsion, m.tol()),
                      "projections sum to the torsion"});
  }
  {
    ParallelTorsionReport<T> pt = parallel_torsion_report(m, bundle);
    CheckOutcome c{"parallel-torsion", true, ""};
    c.detail = "derivative max-norm = " +
               NumTraits<T>::str(pt.torsion_parallel_residual);
    if (pt.relations_asserted && !pt.relations_hold) {
      c.passed = false;
      c.detail += "; trace relations failed under parallel torsion";
    }
    checks.push_back(std::move(c));
  }
  {
    ContractionIdentityReport<T> ci = contraction_identity_check(m, bundle);
    CheckOutcome c{"contraction-identity", true, ""};
    c.detail = "value = " + NumTraits<T>::str(ci.contraction_value) +
               ", -1/8-norm residual = " +
               NumTraits<T>::str(ci.stated_identity_residual) +
               ", -1/2-norm residual = " +
               NumTraits<T>::str(ci.measured_identity_residual);
    if (ci.asserted &&
        (!NumTraits<T>::is_zero(ci.twisted_curvature_residual, m.tol()) ||
         !NumTraits<T>::is_zero(ci.trace_relation_residual, m.tol()))) {
      c.passed = false;
      c.detail += "; twisted curvature relation failed under its hypotheses";
    }
    checks.push_back(std::move(c));
  }
  return finalize_result(std::move(checks), o, digest_src);
}

}  // namespace norden
