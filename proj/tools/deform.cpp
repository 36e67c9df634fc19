// Command-line front end: normalization shifts, geodesic curves, the named
// verification suites and operator-monotonicity counterexample searches.
//
// Exit codes: 0 success, 2 malformed input, 3 hypothesis violation,
// 4 check failure, 5 counterexample search exhausted.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deform/deform.hpp"

namespace {

using deform::Matrix;

deform::io::json input_digest(const std::string& path, const std::string& contents) {
  return deform::io::json{{"path", path}, {"fnv1a64", deform::io::hex64(deform::io::fnv1a64(contents))}};
}

struct MatrixInput {
  std::string path;
  Matrix value;
  deform::io::json digest;
};

MatrixInput load_matrix(const std::string& path) {
  const std::string text = deform::io::read_file(path);
  return MatrixInput{path, deform::io::matrix_from_json(deform::io::parse_json(text, path)),
                     input_digest(path, text)};
}

struct AlphaOptions {
  std::string rho_path, k_path;
  double lambda = 1.0;
  double tol = 1e-12;
  bool center = false;
};

int run_alpha(const AlphaOptions& o) {
  const MatrixInput rho_in = load_matrix(o.rho_path);
  const MatrixInput k_in = load_matrix(o.k_path);
  const deform::FaithfulDensity rho(rho_in.value);
  const deform::Direction dir = o.center ? deform::center_direction(rho, k_in.value)
                                         : deform::Direction::checked(rho, k_in.value);
  const deform::DeformationParameter p{o.lambda};
  deform::ScalarEvalConfig cfg;
  cfg.newton_tol = o.tol;

  const deform::BoundReport bounds = deform::verify_alpha_bounds(rho, dir, p, cfg);

  deform::io::RunReport report;
  report.command = "alpha";
  report.inputs = {{"rho", rho_in.digest},
                   {"k", k_in.digest},
                   {"lambda", o.lambda},
                   {"tol", o.tol},
                   {"centered", !o.center}};
  report.results = {{"alpha", bounds.alpha}, {"s", bounds.s}, {"dim", rho.dim()}};
  report.checks = bounds.checks;
  std::cout << report.to_json().dump(2) << '\n';
  return report.all_passed() ? 0 : 4;
}

struct GeodesicOptions {
  std::string rho_path, k_path;
  double t_min = -1.0, t_max = 1.0;
  int steps = 2;
  std::vector<std::string> probe_paths;
  double lambda = 1.0;
  double tol = 1e-12;
  bool center = false;
};

int run_geodesic(const GeodesicOptions& o) {
  const MatrixInput rho_in = load_matrix(o.rho_path);
  const MatrixInput k_in = load_matrix(o.k_path);
  const deform::FaithfulDensity rho(rho_in.value);
  const deform::Direction dir = o.center ? deform::center_direction(rho, k_in.value)
                                         : deform::Direction::checked(rho, k_in.value);
  std::vector<Matrix> probes;
  for (const auto& path : o.probe_paths) probes.push_back(load_matrix(path).value);

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(o.steps));
  for (int i = 0; i < o.steps; ++i)
    grid.push_back(o.t_min + (o.t_max - o.t_min) * static_cast<double>(i) /
                             static_cast<double>(o.steps - 1));

  const deform::DeformationParameter p{o.lambda};
  deform::ScalarEvalConfig cfg;
  cfg.newton_tol = o.tol;
  const auto rows = deform::geodesic_sample(rho, dir, grid, probes, p, cfg);
  std::cout << deform::io::geodesic_csv(rows, probes.size());
  return 0;
}

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 1234;
  int trials = 0;
};

int run_verify(const VerifyOptions& o) {
  deform::SuiteConfig sc;
  sc.seed = o.seed;
  sc.trials = o.trials;

  deform::io::RunReport report;
  report.command = "verify";
  report.inputs = {{"suite", o.suite}, {"seed", o.seed}, {"trials", o.trials}};
  report.checks = deform::run_suite(o.suite, sc);
  report.results = {{"checks", report.checks.size()},
                    {"failures", deform::count_failures(report.checks)}};
  std::cout << report.to_json().dump(2) << '\n';
  return report.all_passed() ? 0 : 4;
}

struct CounterexampleOptions {
  std::string fn = "u-minus-exp-phi";
  double lambda = 1.0;
  std::uint64_t seed = 2024;
};

int run_counterexample(const CounterexampleOptions& o) {
  deform::SearchConfig cfg;
  cfg.lambda = deform::DeformationParameter{o.lambda};
  cfg.seed = o.seed;
  const auto cert = deform::build_counterexample(deform::deformed_function_from_name(o.fn), cfg);
  const auto reval = deform::revalidate(cert);

  deform::io::json out = deform::io::certificate_to_json(cert);
  out["revalidation"] = {{"order_gap", reval.order_gap},
                         {"violation", reval.violation},
                         {"status", reval.ok ? "pass" : "fail"}};
  std::cout << out.dump(2) << '\n';
  return reval.ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"deformed exponential family of states: shifts, escorts, geodesics, "
               "verification suites and monotonicity counterexamples"};
  app.require_subcommand(1);

  AlphaOptions alpha;
  auto* alpha_cmd = app.add_subcommand("alpha", "solve the normalization shift and check its bounds");
  alpha_cmd->add_option("--rho", alpha.rho_path, "density matrix JSON file")->required();
  alpha_cmd->add_option("--k", alpha.k_path, "direction matrix JSON file")->required();
  alpha_cmd->add_option("--lambda", alpha.lambda, "deformation parameter")->envname("DEFORM_LAMBDA");
  alpha_cmd->add_option("--tol", alpha.tol, "scalar solver tolerance");
  alpha_cmd->add_flag("--center", alpha.center, "recenter the direction instead of rejecting it");

  GeodesicOptions geo;
  auto* geo_cmd = app.add_subcommand("geodesic", "sample the curve t -> state(tK) as CSV");
  geo_cmd->add_option("--rho", geo.rho_path, "density matrix JSON file")->required();
  geo_cmd->add_option("--k", geo.k_path, "direction matrix JSON file")->required();
  geo_cmd->add_option("--t-min", geo.t_min, "curve parameter start")->required();
  geo_cmd->add_option("--t-max", geo.t_max, "curve parameter end")->required();
  geo_cmd->add_option("--steps", geo.steps, "number of samples (>= 2)")
      ->required()
      ->check(CLI::Range(2, 1000000));
  geo_cmd->add_option("--probe", geo.probe_paths, "Hermitian probe JSON file (repeatable)");
  geo_cmd->add_option("--lambda", geo.lambda, "deformation parameter")->envname("DEFORM_LAMBDA");
  geo_cmd->add_option("--tol", geo.tol, "scalar solver tolerance");
  geo_cmd->add_flag("--center", geo.center, "recenter the direction instead of rejecting it");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the named property suites");
  verify_cmd->add_option("--suite", verify.suite, "scalar | operator | state | all")
      ->check(CLI::IsMember({"scalar", "operator", "state", "all"}))
      ->required();
  verify_cmd->add_option("--seed", verify.seed, "seed for every sampled check");
  verify_cmd->add_option("--trials", verify.trials, "override sampled-trial counts");

  CounterexampleOptions cex;
  auto* cex_cmd = app.add_subcommand("counterexample", "search for an operator-monotonicity violation");
  cex_cmd->add_option("--fn", cex.fn, "u-minus-exp-phi | log-exp-phi")
      ->check(CLI::IsMember({"u-minus-exp-phi", "log-exp-phi"}))
      ->required();
  cex_cmd->add_option("--lambda", cex.lambda, "deformation parameter")->envname("DEFORM_LAMBDA");
  cex_cmd->add_option("--seed", cex.seed, "seed for the fallback search");

  int rc = 0;
  alpha_cmd->callback([&] { rc = run_alpha(alpha); });
  geo_cmd->callback([&] { rc = run_geodesic(geo); });
  verify_cmd->callback([&] { rc = run_verify(verify); });
  cex_cmd->callback([&] { rc = run_counterexample(cex); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const deform::parse_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const deform::hypothesis_error& e) {
    std::cerr << "hypothesis violation: " << e.what() << '\n';
    return 3;
  } catch (const deform::search_exhausted& e) {
    std::cerr << "search exhausted: " << e.what() << '\n';
    return 5;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
