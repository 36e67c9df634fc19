// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion pins its tolerances in code; nothing is deferred
// to configuration.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "deform/deform.hpp"
#include "oracles.hpp"

using namespace deform;
using Clock = std::chrono::steady_clock;

namespace {

#ifndef DEFORM_CLI_PATH
#define DEFORM_CLI_PATH ""
#endif

std::string g_cli_path = DEFORM_CLI_PATH;

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int index, const std::string& label, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_command(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  CommandResult result;
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// ---------------------------------------------------------------------------

void criterion_1_scalar_suite() {
  const auto start = Clock::now();
  const double tol = 1e-9;
  Rng rng(1001);
  double worst = 0.0;
  std::string worst_name = "none";
  auto track = [&](const char* name, double value) {
    if (value > worst) {
      worst = value;
      worst_name = name;
    }
  };

  double prev_u = 0.0, prev_v = 1.0;
  auto probe = [&](double u) {
    const double v = exp_phi(u);
    const double w = log_exp_phi(u);
    const double scale = 1.0 + std::abs(u);
    track("identity", std::abs(v + w - 1.0 - u) / scale);
    track("lipschitz", (std::abs(v - prev_v) - std::abs(u - prev_u)) / scale);
    track("lower-bound", (1.0 + 0.5 * u - v) / scale);
    track("series-bound", (v - (1.0 + 0.5 * u + u * u / 12.0)) / (1.0 + u * u));
    if (u < 0.0) {
      track("sandwich-upper", v - std::exp(1.0 + u));
      track("sandwich-lower", std::exp(u) - v);
    }
    prev_u = u;
    prev_v = v;
  };
  for (int i = 0; i < 100000; ++i) probe(rng.uniform(-50.0, 50.0));
  for (const double u : {1e3, -1e3, 1e6, -1e6}) probe(u);
  for (int i = 0; i < 100000; ++i) {
    const double a = rng.uniform(1e-6, 100.0), b = rng.uniform(1e-6, 100.0);
    const double lhs = log_phi(a * b);
    const double rhs = log_phi(a) + log_phi(b) + (a - 1.0) * (b - 1.0);
    track("three-term", std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }

  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof detail, "worst residual %.3e in %s; %.2f s < 10 s", worst,
                worst_name.c_str(), elapsed);
  report(1, "scalar inequality battery at 1e5 points plus overflow probes",
         worst <= tol && elapsed < 10.0, detail);
}

void criterion_2_constant_scan() {
  const auto scan = scan_log_square_gap();
  char detail[160];
  std::snprintf(detail, sizeof detail, "sup = %.10f at u = %.6f over %zu points", scan.supremum,
                scan.arg_u, scan.points);
  report(2, "log-square constant scan lands in (0.48, 0.52)",
         scan.supremum > 0.48 && scan.supremum < 0.52, detail);
}

void criterion_3_alpha_solver() {
  Rng rng(1003);
  double worst_res = 0.0, worst_shift = 0.0, worst_convex = -1.0;
  int bound_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const FaithfulDensity rho(random_density(rng, n));
    const Direction dir = center_direction(rho, random_hermitian(rng, n, rng.uniform(0.1, 2.5)));
    const double alpha = solve_alpha(rho, dir);
    worst_res = std::max(worst_res, std::abs(normalization_value(rho, dir, alpha) - 1.0));

    const double c = rng.uniform(-10.0, 10.0);
    const Matrix shifted = dir.matrix() + c * Matrix::Identity(n, n);
    const double alpha_shifted =
        solve_alpha(rho, center_direction(rho, shifted)) + expectation(rho, shifted);
    worst_shift = std::max(worst_shift, std::abs(alpha_shifted - (alpha + c)));

    bound_failures += count_failures(verify_alpha_bounds(rho, dir).checks);

    const double t1 = rng.uniform(-3.0, 3.0), t2 = rng.uniform(-3.0, 3.0);
    auto alpha_at = [&](double t) {
      return solve_alpha(rho, center_direction(rho, t * dir.matrix()));
    };
    worst_convex = std::max(worst_convex, alpha_at(0.5 * (t1 + t2)) - 0.5 * alpha_at(t1) -
                                              0.5 * alpha_at(t2));
  }

  // qubit reference against the independent bisection oracle
  const FaithfulDensity rho(0.5 * Matrix::Identity(2, 2));
  Matrix k = Matrix::Zero(2, 2);
  k(0, 0) = 1.0;
  k(1, 1) = -1.0;
  const double alpha_qubit = solve_alpha(rho, Direction::checked(rho, k));
  const double alpha_oracle = oracle::classical_alpha_bisect({0.5, 0.5}, {1.0, -1.0});

  const bool ok = worst_res <= 1e-11 && worst_shift <= 1e-10 && bound_failures == 0 &&
                  worst_convex <= 1e-10 && std::abs(alpha_qubit - alpha_oracle) <= 1e-10 &&
                  std::abs(alpha_qubit - 0.1299) <= 5e-4;
  char detail[240];
  std::snprintf(detail, sizeof detail,
                "|N(a)-1| <= %.2e; shift %.2e; convexity %.2e; bound failures %d; "
                "qubit alpha %.6f vs oracle %.6f",
                worst_res, worst_shift, worst_convex, bound_failures, alpha_qubit, alpha_oracle);
  report(3, "normalization shift solver on 100 random instances", ok, detail);
}

void criterion_4_diagonal_equivalence() {
  Rng rng(1004);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(2, 6);
    std::vector<double> prob(n), k(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) { prob[i] = rng.uniform(0.05, 1.0); sum += prob[i]; }
    for (int i = 0; i < n; ++i) prob[i] /= sum;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) { k[i] = rng.uniform(-2.0, 2.0); mean += prob[i] * k[i]; }
    for (int i = 0; i < n; ++i) k[i] -= mean;

    Matrix rho_m = Matrix::Zero(n, n), k_m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) { rho_m(i, i) = prob[i]; k_m(i, i) = k[i]; }
    const FaithfulDensity rho(rho_m);
    const Direction dir = center_direction(rho, k_m);

    const double a_ref = classical_alpha(prob, k);
    const auto mp = make_state(rho, dir);
    const auto esc = escort(rho, mp);
    worst = std::max(worst, std::abs(mp.alpha - a_ref));
    double z_ref = 0.0, dnum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double yi = exp_phi(k[i] - a_ref);
      const double ph = yi / (1.0 + yi);
      worst = std::max(worst, std::abs(mp.sigma(i, i).real() - prob[i] * yi));
      z_ref += prob[i] * ph;
      dnum += prob[i] * k[i] * ph;
    }
    for (int i = 0; i < n; ++i) {
      const double yi = exp_phi(k[i] - a_ref);
      worst = std::max(worst,
                       std::abs(esc.rho_tilde(i, i).real() - prob[i] * (yi / (1.0 + yi)) / z_ref));
    }
    worst = std::max(worst, std::abs(esc.z - z_ref));
    worst = std::max(worst, std::abs(alpha_derivative(rho, dir, 1.0) - dnum / z_ref));
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "worst deviation %.3e <= 1e-10", worst);
  report(4, "diagonal instances match the classical bisection route", worst <= 1e-10, detail);
}

void criterion_5_derivatives() {
  Rng rng(1005);
  double worst_d = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const FaithfulDensity rho(random_density(rng, n));
    const Direction dir = center_direction(rho, random_hermitian(rng, n));
    auto alpha_at = [&](double t) {
      return solve_alpha(rho, center_direction(rho, t * dir.matrix()));
    };
    for (int j = 0; j < 20; ++j) {
      const double t = rng.uniform(-3.0, 3.0);
      const double fd = (alpha_at(t + 1e-4) - alpha_at(t - 1e-4)) / 2e-4;
      worst_d = std::max(worst_d, std::abs(alpha_derivative(rho, dir, t) - fd));
    }
  }

  double worst_tangent = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const FaithfulDensity rho(random_density(rng, n));
    const Direction dir = center_direction(rho, random_hermitian(rng, n));
    std::vector<Matrix> probes;
    for (int i = 0; i < 5; ++i) probes.push_back(random_hermitian(rng, n));
    for (const double t : {-1.0, -0.2, 0.0, 0.4, 1.2}) {
      const auto row = geodesic_sample(rho, dir, {t}, probes)[0];
      for (std::size_t p = 0; p < probes.size(); ++p) {
        auto omega_at = [&](double s) {
          return geodesic_sample(rho, dir, {s}, {probes[p]})[0].omega[0];
        };
        const double fd = (omega_at(t + 1e-4) - omega_at(t - 1e-4)) / 2e-4;
        worst_tangent = std::max(worst_tangent, std::abs(row.tangent[p] - fd));
      }
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "derivative gap %.3e <= 1e-6; tangent gap %.3e <= 1e-5",
                worst_d, worst_tangent);
  report(5, "shift derivative and tangent functional match finite differences",
         worst_d <= 1e-6 && worst_tangent <= 1e-5, detail);
}

void criterion_6_escorts() {
  Rng rng(1006);
  double z_lo = std::numeric_limits<double>::infinity(), z_hi = 0.0;
  double worst_trace = 0.0;
  double spectrum_lo = std::numeric_limits<double>::infinity(), spectrum_hi = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const FaithfulDensity rho(random_density(rng, n));
    const Direction dir = center_direction(rho, random_hermitian(rng, n, rng.uniform(0.1, 3.0)));
    const auto mp = make_state(rho, dir);
    const auto esc = escort(rho, mp);
    z_lo = std::min(z_lo, esc.z);
    z_hi = std::max(z_hi, esc.z);
    worst_trace = std::max(worst_trace, std::abs(esc.rho_tilde.trace().real() - 1.0));
    const auto spectrum = eigenvalues_of(apply_fn(mp.Y, [](double x) { return phi(x); }));
    spectrum_lo = std::min(spectrum_lo, spectrum.minCoeff());
    spectrum_hi = std::max(spectrum_hi, spectrum.maxCoeff());
  }
  const bool ok = z_lo > 0.0 && z_hi <= 0.5 + 1e-12 && worst_trace <= 1e-10 && spectrum_lo > 0.0 &&
                  spectrum_hi < 1.0;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "z in [%.4f, %.4f]; trace gap %.2e; phi(Y) spectrum in [%.4f, %.4f]", z_lo, z_hi,
                worst_trace, spectrum_lo, spectrum_hi);
  report(6, "escort normalizers and spectra stay in range", ok, detail);
}

void criterion_7_monotonicity_lab() {
  const auto start = Clock::now();
  const double eps = std::exp(1.0) - 1.0;

  const double det = probe_point(0.5, eps).pair.determinant;
  const bool det_ok = std::abs(det - (-0.00673)) <= 1e-5;

  // lambda*(3-e)/(e^2-3e+1) recomputed independently to 16 digits
  const double thr = violation_threshold(1.0);
  const bool thr_ok = std::abs(thr - 1.2028411832693709) <= 1e-5;

  bool certs_ok = true;
  for (auto f : {DeformedFunction::u_minus_exp_phi, DeformedFunction::log_exp_phi}) {
    const auto cert = build_counterexample(f);
    certs_ok = certs_ok && cert.violation <= -1e-6 && revalidate(cert).ok;
  }

  SearchConfig lab;
  lab.seed = 1007;
  const auto mono = monotone_sanity([](double x) { return log_phi(x); }, 500, lab);

  Rng rng(1008);
  double concave_worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 500; ++i) {
    const int n = rng.uniform_int(2, 6);
    const Matrix a = random_positive(rng, n, 0.05);
    const Matrix b = a + random_psd(rng, n, rng.uniform_int(1, n), rng.uniform(0.1, 2.0));
    const Matrix fa = apply_fn(a, [](double x) { return log_phi(x); });
    const Matrix fb = apply_fn(b, [](double x) { return log_phi(x); });
    const Matrix mid = apply_fn(symmetrized(0.5 * a + 0.5 * b), [](double x) { return log_phi(x); });
    concave_worst = std::min(concave_worst, min_eigenvalue(mid - 0.5 * fa - 0.5 * fb));
  }

  const double elapsed = seconds_since(start);
  const bool ok = det_ok && thr_ok && certs_ok && mono.failures == 0 &&
                  concave_worst >= -1e-8 && elapsed < 30.0;
  char detail[240];
  std::snprintf(detail, sizeof detail,
                "D = %.8f; threshold = %.7f; certificates %s; monotone failures %d/500; "
                "concavity slack %.2e; %.1f s < 30 s",
                det, thr, certs_ok ? "ok" : "missing", mono.failures, concave_worst, elapsed);
  report(7, "monotonicity lab reproduces the guided violation", ok, detail);
}

void criterion_8_cli_verify() {
  if (g_cli_path.empty()) {
    report(8, "deterministic full verification via the CLI", false, "CLI path not provided");
    return;
  }
  const auto start = Clock::now();
  const std::string cmd = g_cli_path + " verify --suite all --seed 7";
  const auto first = run_command(cmd);
  const auto second = run_command(cmd);
  const double elapsed = seconds_since(start);

  bool zero_failures = false;
  long long n_checks = 0;
  try {
    const auto j = io::parse_json(first.out, "verify output");
    zero_failures = j.at("failures").get<long long>() == 0;
    n_checks = static_cast<long long>(j.at("checks").size());
  } catch (const std::exception&) {
    zero_failures = false;
  }
  const bool ok = first.exit_code == 0 && second.exit_code == 0 && first.out == second.out &&
                  !first.out.empty() && zero_failures && elapsed < 120.0;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "exit %d/%d; byte-identical %s; %lld checks, zero failures %s; %.1f s < 120 s",
                first.exit_code, second.exit_code, first.out == second.out ? "yes" : "NO",
                n_checks, zero_failures ? "yes" : "NO", elapsed);
  report(8, "deterministic full verification via the CLI", ok, detail);
}

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  criterion_1_scalar_suite();
  criterion_2_constant_scan();
  criterion_3_alpha_solver();
  criterion_4_diagonal_equivalence();
  criterion_5_derivatives();
  criterion_6_escorts();
  criterion_7_monotonicity_lab();
  criterion_8_cli_verify();
  if (g_failures == 0) {
    std::printf("acceptance: all 8 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
