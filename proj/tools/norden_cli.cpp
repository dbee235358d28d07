// Command-line front end: ingest manifold specs from JSON, run the geometry
// pipelines and verification suites, emit text and JSON reports.
//
// Exit codes: 0 success, 1 verification failure, 2 validation failure,
// 3 parse/usage error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "norden/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitValidationFailure = 2;
constexpr int kExitParseError = 3;

void write_report(const std::string& path, const norden::json& report) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw norden::ParseError("cannot write report file: " + path);
  out << report.dump(2) << "\n";
}

struct ClassifyResult {
  int exit_code = kExitOk;
  norden::json report;
  std::string text;
};

template <class T>
ClassifyResult run_classify(const norden::LoadedDocument& doc,
                            const std::string& path) {
  ClassifyResult result;
  norden::ManifoldSpec<T> spec = norden::spec_from_json<T>(doc.doc);
  norden::ValidationReport vrep = norden::validate(spec);
  result.report = norden::json{
      {"input", norden::json{{"path", path},
                             {"digest", norden::fnv1a_digest(doc.raw)}}},
      {"mode", norden::to_string(norden::NumTraits<T>::mode)},
      {"validation", norden::to_json(vrep)}};
  std::ostringstream text;
  if (!vrep.all_passed()) {
    text << "validation failed: " << vrep.first_failure()->name << "\n";
    result.exit_code = kExitValidationFailure;
    result.text = text.str();
    return result;
  }
  norden::Manifold<T> m = norden::Manifold<T>::validated(std::move(spec));
  norden::ClassVerdict<T> verdict = norden::classify(m);
  auto [norm, alternate] = norden::square_norm_routes(m);
  bool routes_agree = norden::NumTraits<T>::equal(norm, alternate, m.tol());
  bool isotropic = norden::NumTraits<T>::is_zero(norm, m.tol());
  result.report["classification"] = norden::to_string(verdict.cls);
  result.report["max_f"] = norden::scalar_json(verdict.max_f);
  result.report["max_cyclic_f"] = norden::scalar_json(verdict.max_cyclic);
  result.report["square_norm_nabla_j"] = norden::scalar_json(norm);
  result.report["square_norm_routes_agree"] = routes_agree;
  if (!routes_agree)
    result.report["square_norm_alternate_route"] =
        norden::scalar_json(alternate);
  result.report["isotropic_kahler"] = isotropic;
  text << "classification: " << norden::to_string(verdict.cls) << "\n"
       << "square norm of nabla J: " << norden::NumTraits<T>::str(norm) << "\n";
  if (!routes_agree)
    text << "warning: contraction routes disagree (alternate route gives "
         << norden::NumTraits<T>::str(alternate) << ")\n";
  text << "isotropic Kahler: " << (isotropic ? "true" : "false") << "\n";
  result.text = text.str();
  return result;
}

template <class T>
norden::json family_curvature_json(const norden::Manifold<T>& m) {
  norden::Connection<T> lc = norden::levi_civita(m);
  norden::CurvatureData<T> base = norden::riemann(m, lc);
  norden::SkewConnectionBundle<T> bundle = norden::build_bundle(m);
  norden::CurvatureData<T> prime = norden::riemann(m, bundle.nabla_prime);
  return norden::json{
      {"tau", norden::scalar_json(base.scalar)},
      {"tau_star_star", norden::scalar_json(base.scalar_star_star)},
      {"tau_prime", norden::scalar_json(prime.scalar)},
      {"square_norm_nabla_j",
       norden::scalar_json(norden::square_norm_nabla_j(m))},
      {"transform_relation_residual",
       norden::scalar_json(norden::curvature_relation_residual(m, bundle))},
      {"parallel_torsion",
       norden::to_json(norden::parallel_torsion_report(m, bundle))},
      {"contraction_identity",
       norden::to_json(norden::contraction_identity_check(m, bundle))}};
}

template <class T>
int run_family(const std::vector<std::string>& lambda_str,
               const std::string& report_path) {
  norden::FamilyParams<T> p;
  for (int i = 0; i < 4; ++i)
    p.lambda[i] = norden::parse_scalar<T>(lambda_str[i]);
  norden::FamilyReport<T> fam = norden::family_report(p);
  norden::Manifold<T> m = norden::family_manifold(p);
  norden::SkewConnectionReport<T> sk = norden::skew_connection_report(m);

  std::string lambda_join;
  for (int i = 0; i < 4; ++i) {
    if (i) lambda_join += ",";
    lambda_join += norden::NumTraits<T>::str(p.lambda[i]);
  }
  norden::json report{
      {"input",
       norden::json{{"lambda", lambda_join},
                    {"digest", norden::fnv1a_digest("family:" + lambda_join)}}},
      {"mode", norden::to_string(norden::NumTraits<T>::mode)},
      {"family", norden::to_json(fam)},
      {"skew_connection", norden::to_json(sk)},
      {"curvature", family_curvature_json(m)}};
  write_report(report_path, report);

  std::cout << "classification: " << norden::to_string(fam.classification)
            << "\n"
            << "square norm of nabla J: "
            << norden::NumTraits<T>::str(fam.square_norm) << "\n"
            << "golden tables match: " << (fam.golden_all() ? "yes" : "no")
            << "\n"
            << "connection ratios (B=3/4, C=1/2): "
            << (fam.b_is_three_quarters_prime && fam.c_is_half_prime ? "yes"
                                                                     : "no")
            << "\n"
            << "Kahler curvature: "
            << (fam.kahler_curvature.kahler ? "yes" : "no")
            << " (locus test: " << (fam.kahler_locus ? "on" : "off") << ")\n"
            << "skew connection battery: "
            << (sk.all_passed() ? "pass" : "fail") << "\n";
  if (report_path.empty())
    std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int run_verify(norden::VerifyOptions opts, const std::string& input_path,
               const std::string& report_path) {
  norden::VerifyResult result;
  if (input_path.empty()) {
    result = norden::run_battery(opts);
  } else {
    norden::LoadedDocument doc = norden::load_document(input_path);
    opts.mode = doc.mode;
    std::string digest_src = doc.raw;
    if (doc.mode == norden::ScalarMode::Rational) {
      auto spec = norden::spec_from_json<norden::Rational>(doc.doc);
      result = norden::run_spec_battery(spec, opts, digest_src);
    } else {
      auto spec = norden::spec_from_json<double>(doc.doc);
      result = norden::run_spec_battery(spec, opts, digest_src);
    }
  }
  for (const auto& c : result.checks)
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name
              << (c.detail.empty() ? "" : " - " + c.detail) << "\n";
  if (!result.all_passed)
    std::cout << "first failing check: " << result.first_failure << "\n";
  std::cout << (result.all_passed ? "all checks passed" : "FAILURES present")
            << "\n";
  write_report(report_path, result.report);
  if (result.all_passed) return kExitOk;
  if (!input_path.empty() && result.first_failure == "validation")
    return kExitValidationFailure;
  return kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor calculus and verification for left-invariant almost "
               "complex structures with Norden metric"};
  app.require_subcommand(1);

  std::string classify_path, classify_report;
  auto* classify_cmd =
      app.add_subcommand("classify", "classify a manifold spec from JSON");
  classify_cmd->add_option("file", classify_path, "input JSON file")
      ->required();
  classify_cmd->add_option("--report", classify_report, "JSON report path");

  std::string family_lambda, family_report_path;
  auto* family_cmd = app.add_subcommand(
      "family", "run the full battery on a member of the built-in family");
  family_cmd
      ->add_option("--lambda", family_lambda,
                   "four scalars a,b,c,d (rationals like 3/2 accepted)")
      ->required();
  family_cmd->add_option("--report", family_report_path, "JSON report path");

  std::string verify_suite = "paper", verify_input, verify_report_path;
  std::uint64_t verify_seed = norden::kPaperSuiteSeed;
  int verify_samples = 100, verify_jobs = 1;
  auto* verify_cmd =
      app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", verify_suite, "paper or random")
      ->check(CLI::IsMember({"paper", "random"}));
  verify_cmd->add_option("--samples", verify_samples, "sample count")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_seed, "random-suite seed");
  verify_cmd->add_option("--jobs", verify_jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--report", verify_report_path, "JSON report path");
  verify_cmd->add_option("file", verify_input,
                         "optional manifold JSON to verify instead of the "
                         "built-in suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParseError;
  }

  const auto started = std::chrono::steady_clock::now();
  int exit_code = kExitOk;
  try {
    if (classify_cmd->parsed()) {
      norden::LoadedDocument doc = norden::load_document(classify_path);
      ClassifyResult result =
          doc.mode == norden::ScalarMode::Rational
              ? run_classify<norden::Rational>(doc, classify_path)
              : run_classify<double>(doc, classify_path);
      std::cout << result.text;
      write_report(classify_report, result.report);
      exit_code = result.exit_code;
    } else if (family_cmd->parsed()) {
      std::vector<std::string> parts;
      std::stringstream ss(family_lambda);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(item);
      if (parts.size() != 4)
        throw norden::ParseError("--lambda needs exactly four scalars");
      auto mode = norden::mode_from_env().value_or(norden::ScalarMode::Rational);
      exit_code = mode == norden::ScalarMode::Rational
                      ? run_family<norden::Rational>(parts, family_report_path)
                      : run_family<double>(parts, family_report_path);
    } else if (verify_cmd->parsed()) {
      norden::VerifyOptions opts;
      opts.suite = verify_suite == "paper"
                       ? norden::VerifyOptions::Suite::Paper
                       : norden::VerifyOptions::Suite::Random;
      opts.seed = verify_seed;
      opts.samples = verify_samples;
      opts.jobs = verify_jobs;
      opts.mode =
          norden::mode_from_env().value_or(norden::ScalarMode::Rational);
      if (const char* fault = std::getenv("NORDEN_INJECT_FAULT"))
        opts.fault = fault;
      exit_code = run_verify(opts, verify_input, verify_report_path);
    }
  } catch (const norden::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const norden::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "elapsed: " << elapsed.count() << " ms\n";
  return exit_code;
}
