#pragma once

#include <string>

#include <json.hpp>

#include "norden/family.hpp"

namespace norden {

using json = nlohmann::ordered_json;

// Rationals serialize as canonical "p/q" strings so reports stay exact;
// floats go out as plain JSON numbers (shortest round-trip form).
inline json scalar_json(const Rational& v) { return NumTraits<Rational>::str(v); }
inline json scalar_json(double v) { return v; }

inline json signature_json(const Signature& sig) {
  return json{{"positive", sig.positive},
              {"negative", sig.negative},
              {"zero", sig.zero}};
}

inline json to_json(const CheckResult& c) {
  json out;
  out["name"] = c.name;
  out["passed"] = c.passed;
  if (!c.first_violation.empty()) out["first_violation"] = c.first_violation;
  if (!c.detail.empty()) out["detail"] = c.detail;
  return out;
}

inline json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return json{{"all_passed", r.all_passed()},
              {"signature", signature_json(r.metric_signature)},
              {"checks", std::move(checks)}};
}

template <class T>
json to_json(const NaturalityResiduals<T>& r) {
  return json{{"j_residual", scalar_json(r.j_residual)},
              {"g_residual", scalar_json(r.g_residual)}};
}

template <class T>
json to_json(const UniquenessVerdict<T>& v) {
  json out{{"system_consistent", v.system_consistent}};
  if (v.system_consistent) {
    out["solution_dim"] = v.solution_dim;
    out["unique"] = v.unique;
    if (v.unique) {
      out["matches_construction"] = v.matches_construction;
      out["construction_residual"] = scalar_json(v.construction_residual);
    }
  }
  return out;
}

template <class T>
json to_json(const SkewConnectionReport<T>& r) {
  return json{
      {"classification", to_string(r.classification)},
      {"projection_checks_apply", r.projection_checks_apply},
      {"naturality", to_json(r.naturality)},
      {"torsion_totally_skew", r.torsion_totally_skew},
      {"torsion_is_double_q", r.torsion_is_double_q},
      {"p1_zero", r.p1_zero},
      {"p2_nonzero", r.p2_nonzero},
      {"p3_zero", r.p3_zero},
      {"p4_nonzero", r.p4_nonzero},
      {"uniqueness", to_json(r.uniqueness)},
      {"b_is_three_quarters_prime", r.b_is_three_quarters_prime},
      {"c_is_half_prime", r.c_is_half_prime},
      {"all_passed", r.all_passed()}};
}

template <class T>
json to_json(const KahlerVerdict<T>& v) {
  return json{{"antisym_residual", scalar_json(v.antisym_residual)},
              {"bianchi_residual", scalar_json(v.bianchi_residual)},
              {"j_residual", scalar_json(v.j_residual)},
              {"curvature_like", v.curvature_like},
              {"kahler", v.kahler}};
}

template <class T>
json to_json(const ParallelTorsionReport<T>& r) {
  return json{
      {"torsion_parallel_residual", scalar_json(r.torsion_parallel_residual)},
      {"torsion_parallel", r.torsion_parallel},
      {"ricci_relation_residual", scalar_json(r.ricci_relation_residual)},
      {"scalar_relation_residual", scalar_json(r.scalar_relation_residual)},
      {"relations_asserted", r.relations_asserted},
      {"relations_hold", r.relations_hold}};
}

template <class T>
json to_json(const ContractionIdentityReport<T>& r) {
  return json{
      {"contraction_value", scalar_json(r.contraction_value)},
      {"square_norm", scalar_json(r.square_norm)},
      {"stated_identity_residual", scalar_json(r.stated_identity_residual)},
      {"stated_identity_holds", r.stated_identity_holds},
      {"measured_identity_residual",
       scalar_json(r.measured_identity_residual)},
      {"twisted_curvature_residual",
       scalar_json(r.twisted_curvature_residual)},
      {"trace_relation_residual", scalar_json(r.trace_relation_residual)},
      {"hypotheses_hold", r.hypotheses_hold},
      {"asserted", r.asserted}};
}

template <class T>
json to_json(const FamilyReport<T>& r) {
  return json{
      {"classification", to_string(r.classification)},
      {"some_lambda_nonzero", r.some_lambda_nonzero},
      {"non_kahler_iff_lambda", r.non_kahler_iff_lambda},
      {"square_norm", scalar_json(r.square_norm)},
      {"norm_law_exact", r.norm_law_exact},
      {"isotropic", r.isotropic},
      {"isotropic_iff_locus", r.isotropic_iff_locus},
      {"golden_f", r.golden_f},
      {"golden_nabla_j", r.golden_nabla_j},
      {"golden_torsion_vec", r.golden_torsion_vec},
      {"golden_torsion", r.golden_torsion},
      {"golden_nabla_prime", r.golden_nabla_prime},
      {"b_is_three_quarters_prime", r.b_is_three_quarters_prime},
      {"c_is_half_prime", r.c_is_half_prime},
      {"kahler_curvature", to_json(r.kahler_curvature)},
      {"kahler_locus", r.kahler_locus},
      {"kahler_iff_locus", r.kahler_iff_locus},
      {"curvature_criterion_residual",
       scalar_json(r.curvature_criterion_residual)},
      {"criterion_matches_kahler", r.criterion_matches_kahler}};
}

template <class T>
json to_json(const SkewSquareAlgebraReport<T>& r) {
  return json{
      {"dim", r.dim},
      {"samples", r.samples},
      {"cyclic_multiple_residual", scalar_json(r.cyclic_multiple_residual)},
      {"reduction_residual", scalar_json(r.reduction_residual)},
      {"passed", r.passed}};
}

// FNV-1a, used as a stable input digest in reports.
inline std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace norden
