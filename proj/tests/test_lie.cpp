#include <doctest.h>

#include "norden/rng.hpp"
#include "oracle_helpers.hpp"

using namespace norden;
using oracle::rq;

namespace {

ManifoldSpec<Rational> abelian_spec() {
  ManifoldSpec<Rational> spec = family_spec(oracle::lam(0, 0, 0, 0));
  return spec;
}

const CheckResult* find_check(const ValidationReport& r, const char* name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("abelian algebra with the standard structure validates") {
  ValidationReport rep = validate(abelian_spec());
  CHECK(rep.all_passed());
  CHECK(rep.metric_signature.positive == 2);
  CHECK(rep.metric_signature.negative == 2);
  CHECK(rep.metric_signature.zero == 0);
}

TEST_CASE("family members validate for assorted parameters") {
  CHECK(validate(family_spec(oracle::lam(1, 0, 0, 0))).all_passed());
  CHECK(validate(family_spec(oracle::lam(5, -2, 1, 3))).all_passed());
  SplitMix64 rng(41);
  for (int s = 0; s < 25; ++s) {
    FamilyParams<Rational> p{random_lambda<Rational>(rng, false)};
    CHECK(validate(family_spec(p)).all_passed());
  }
}

TEST_CASE("one-sided sign flip is caught by the antisymmetry check") {
  ManifoldSpec<Rational> spec = family_spec(oracle::lam(1, 0, 0, 0));
  spec.algebra.c(1, 0, 0) = rq(1);  // both orientations now +1
  ValidationReport rep = validate(spec);
  CHECK_FALSE(rep.all_passed());
  const CheckResult* c = find_check(rep, "bracket-antisymmetry");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  CHECK(c->first_violation == std::vector<int>{1, 2, 1});
}

TEST_CASE("a non-Jacobi bracket is caught") {
  ManifoldSpec<Rational> spec = abelian_spec();
  auto set = [&](int i, int j, int k, Rational v) {
    spec.algebra.c(i, j, k) = v;
    spec.algebra.c(j, i, k) = -v;
  };
  set(0, 1, 1, rq(1));  // [X1,X2]=X2
  set(1, 2, 2, rq(1));  // [X2,X3]=X3
  ValidationReport rep = validate(spec);
  const CheckResult* c = find_check(rep, "jacobi-identity");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
}

TEST_CASE("a broken complex structure is caught") {
  ManifoldSpec<Rational> spec = abelian_spec();
  spec.j(2, 0) = rq(2);  // J^2 no longer -Id
  ValidationReport rep = validate(spec);
  const CheckResult* c = find_check(rep, "j-squared-is-minus-identity");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
}

TEST_CASE("degenerate and wrongly signed metrics are failures, not crashes") {
  ManifoldSpec<Rational> spec = abelian_spec();
  spec.g(3, 3) = rq(0);
  ValidationReport rep = validate(spec);
  const CheckResult* nd = find_check(rep, "metric-nondegenerate");
  REQUIRE(nd != nullptr);
  CHECK_FALSE(nd->passed);

  ManifoldSpec<Rational> spec2 = abelian_spec();
  spec2.g(3, 3) = rq(1);
  ValidationReport rep2 = validate(spec2);
  const CheckResult* sg = find_check(rep2, "metric-signature-split");
  REQUIRE(sg != nullptr);
  CHECK_FALSE(sg->passed);
}

TEST_CASE("a metric that J fails to anti-preserve is caught") {
  ManifoldSpec<Rational> spec = abelian_spec();
  for (int i = 0; i < 4; ++i) spec.g(i, i) = rq(1);  // definite metric
  ValidationReport rep = validate(spec);
  const CheckResult* c = find_check(rep, "norden-anti-isometry");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
}

TEST_CASE("the signature routine handles zero diagonals") {
  // antidiagonal pairing needs the off-diagonal merge step
  Matrix<Rational> a(4, std::vector<Rational>(4, rq(0)));
  a[0][1] = a[1][0] = rq(1);
  a[2][3] = a[3][2] = rq(-2);
  Signature sig = symmetric_signature(a);
  CHECK(sig.positive == 2);
  CHECK(sig.negative == 2);
  CHECK(sig.zero == 0);
}

TEST_CASE("brackets extend bilinearly") {
  auto m1 = oracle::fam(1, 0, 0, 0);
  std::vector<Rational> x1 = m1.frame_vector(0);
  std::vector<Rational> x2 = m1.frame_vector(1);
  std::vector<Rational> b = m1.bracket(x1, x2);
  CHECK(b == std::vector<Rational>{rq(1), rq(0), rq(0), rq(0)});

  auto m2 = oracle::fam(0, 0, 1, 1);
  std::vector<Rational> b2 = m2.bracket(m2.frame_vector(2), m2.frame_vector(3));
  CHECK(b2 == std::vector<Rational>{rq(0), rq(0), rq(1), rq(1)});

  SplitMix64 rng(7);
  std::vector<Rational> x(4);
  for (auto& v : x) v = random_scalar<Rational>(rng);
  std::vector<Rational> self = m1.bracket(x, x);
  for (const auto& v : self) CHECK(v == rq(0));
}

TEST_CASE("the associated metric is the J-twist of g and flips sign under J") {
  SplitMix64 rng(3);
  for (int s = 0; s < 10; ++s) {
    FamilyParams<Rational> p{random_lambda<Rational>(rng, false)};
    Manifold<Rational> m = family_manifold(p);
    const int n = m.dim();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        std::vector<Rational> xb = m.frame_vector(b);
        Rational expected = m.metric(m.frame_vector(a), m.apply_j(xb));
        CHECK(m.g_assoc()(a, b) == expected);
        // twisted arguments flip the sign
        Rational twisted = rq(0);
        const auto& j = m.j();
        for (int p1 = 0; p1 < n; ++p1)
          for (int q1 = 0; q1 < n; ++q1)
            twisted += j(p1, a) * j(q1, b) * m.g_assoc()(p1, q1);
        CHECK(twisted == -m.g_assoc()(a, b));
      }
  }
}

TEST_CASE("Killing residual vanishes on the family and flags tampering") {
  CHECK(killing_residual(oracle::fam(1, 0, 0, 0)) == rq(0));
  CHECK(killing_residual(oracle::fam(3, -4, 5, 7)) == rq(0));
  CHECK(killing_residual(Manifold<Rational>::validated(abelian_spec())) ==
        rq(0));

  // replace [X1,X2] by X3: still a Lie algebra, no longer Killing
  ManifoldSpec<Rational> spec = family_spec(oracle::lam(1, 0, 0, 0));
  for (int k = 0; k < 4; ++k) {
    spec.algebra.c(0, 1, k) = rq(k == 2 ? 1 : 0);
    spec.algebra.c(1, 0, k) = rq(k == 2 ? -1 : 0);
  }
  // direct loop evaluation of the defining combination, frozen beforehand
  Manifold<Rational> tampered = Manifold<Rational>::validated(spec);
  CHECK(killing_residual(tampered) == rq(2));
}

TEST_CASE("validated manifolds expose an exact inverse metric") {
  auto m = oracle::fam(2, 3, -1, 4);
  const auto& g = m.g();
  const auto& gi = m.g_inv();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Rational acc = rq(0);
      for (int k = 0; k < 4; ++k) acc += g(a, k) * gi(k, b);
      CHECK(acc == (a == b ? rq(1) : rq(0)));
    }
}

TEST_CASE("validated() throws with the report attached") {
  ManifoldSpec<Rational> spec = abelian_spec();
  spec.g(3, 3) = rq(0);
  try {
    Manifold<Rational>::validated(spec);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK_FALSE(e.report().all_passed());
    REQUIRE(e.report().first_failure() != nullptr);
  }
}

TEST_CASE("shape mismatches throw instead of reporting") {
  ManifoldSpec<Rational> spec = abelian_spec();
  spec.algebra.dim = 6;
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);
}
