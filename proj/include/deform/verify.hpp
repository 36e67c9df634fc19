#ifndef DEFORM_VERIFY_HPP
#define DEFORM_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "deform/hermitian.hpp"
#include "deform/monotonicity.hpp"
#include "deform/report.hpp"
#include "deform/rng.hpp"
#include "deform/scalar.hpp"
#include "deform/state.hpp"

namespace deform {

/// Parameters of the named check suites.  trials = 0 keeps the per-check
/// defaults; a positive value rescales the sampled-trial counts.
struct SuiteConfig {
  std::uint64_t seed = 1234;
  int trials = 0;
  DeformationParameter lambda{1.0};

  int count(int fallback) const { return trials > 0 ? trials : fallback; }
};

// ---------------------------------------------------------------------------
// scalar suite: the inequality battery for the deformed exp/log at lambda = 1
// ---------------------------------------------------------------------------

inline std::vector<Check> scalar_suite(const SuiteConfig& sc = {}) {
  std::vector<Check> checks;
  Rng rng(sc.seed);
  const DeformationParameter p{};  // the inequalities below are specific to lambda = 1

  {
    // defining identity v = 1 + u - log v, relative to the scale of u
    const int n = std::max(sc.count(100000), 1000);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform(-50.0, 50.0);
      const double v = exp_phi(u, p);
      const double w = log_exp_phi(u, p);
      worst = std::max(worst, std::abs(v + w - 1.0 - u) / (1.0 + std::abs(u)));
    }
    checks.push_back(Check::leq("scalar/defining-identity", worst, 0.0, 1e-10));
  }
  {
    // same identity at the overflow probes
    double worst = 0.0;
    for (const double u : {1e3, 1e6, -1e3, -1e6}) {
      const double v = exp_phi(u, p);
      const double w = log_exp_phi(u, p);
      worst = std::max(worst, std::abs(v + w - 1.0 - u) / (1.0 + std::abs(u)));
    }
    checks.push_back(Check::leq("scalar/defining-identity-extremes", worst, 0.0, 1e-9));
  }
  {
    const int n = sc.count(20000);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform(-700.0, 700.0);
      worst = std::max(worst, std::abs(log_phi(exp_phi(u, p), p) - u));
    }
    checks.push_back(Check::leq("scalar/log-exp-round-trip", worst, 0.0, 1e-9));
  }
  {
    const int n = sc.count(100000);
    double worst_lip = -std::numeric_limits<double>::infinity();
    double worst_lower = std::numeric_limits<double>::infinity();
    double worst_series = std::numeric_limits<double>::infinity();
    double worst_sand_hi = std::numeric_limits<double>::infinity();
    double worst_sand_lo = std::numeric_limits<double>::infinity();
    double prev_u = 0.0, prev_v = 1.0;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform(-50.0, 50.0);
      const double v = exp_phi(u, p);
      worst_lip = std::max(worst_lip, std::abs(v - prev_v) - std::abs(u - prev_u));
      worst_lower = std::min(worst_lower, v - (1.0 + 0.5 * u));
      worst_series = std::min(worst_series, (1.0 + 0.5 * u + u * u / 12.0) - v);
      if (u < 0.0) {
        worst_sand_hi = std::min(worst_sand_hi, std::exp(1.0 + u) - v);
        worst_sand_lo = std::min(worst_sand_lo, v - std::exp(u));
      }
      prev_u = u;
      prev_v = v;
    }
    // overflow probes participate in every inequality
    for (const double u : {1e3, 1e6, -1e3, -1e6}) {
      const double v = exp_phi(u, p);
      worst_lower = std::min(worst_lower, v - (1.0 + 0.5 * u));
      worst_series = std::min(worst_series, (1.0 + 0.5 * u + u * u / 12.0) - v);
      if (u < 0.0) {
        worst_sand_hi = std::min(worst_sand_hi, std::exp(1.0 + u) - v);
        worst_sand_lo = std::min(worst_sand_lo, v - std::exp(u));
      }
    }
    checks.push_back(Check::leq("scalar/exp-lipschitz", worst_lip, 0.0, 1e-12));
    checks.push_back(Check::geq("scalar/exp-half-slope-lower-bound", worst_lower, 0.0, 1e-12));
    checks.push_back(Check::geq("scalar/exp-series-upper-bound", worst_series, 0.0, 1e-12));
    checks.push_back(Check::geq("scalar/exp-negative-sandwich-upper", worst_sand_hi, 0.0, 1e-12));
    checks.push_back(Check::geq("scalar/exp-negative-sandwich-lower", worst_sand_lo, 0.0, 1e-12));
  }
  {
    const int n = sc.count(20000);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = rng.uniform(1e-6, 100.0), b = rng.uniform(1e-6, 100.0);
      const double lhs = log_phi(a * b, p);
      const double rhs = log_phi(a, p) + log_phi(b, p) + (a - 1.0) * (b - 1.0);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    checks.push_back(Check::leq("scalar/log-three-term-identity", worst, 0.0, 1e-10));
  }
  {
    const int n = sc.count(20000);
    double worst = std::numeric_limits<double>::infinity();
    double worst_strict = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform(-50.0, 50.0);
      const double v = exp_phi(u, p);
      const double g = 1.0 + u * v - v * v;
      worst = std::min(worst, g / (1.0 + std::abs(u) * v + v * v));
      if (std::abs(u) >= 1e-3) worst_strict = std::min(worst_strict, g);
    }
    checks.push_back(Check::geq("scalar/exp-square-vs-linear", worst, 0.0, 1e-12));
    checks.push_back(Check::geq("scalar/exp-square-vs-linear-strict", worst_strict, 1e-8));
  }
  {
    const int n = sc.count(20000);
    double worst_range = 0.0, worst_mono = -std::numeric_limits<double>::infinity();
    double worst_lip = -std::numeric_limits<double>::infinity();
    double worst_deriv = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double a = rng.uniform(-40.0, 40.0), b = rng.uniform(-40.0, 40.0);
      const double fa = exp_phi_secant(a, p), fb = exp_phi_secant(b, p);
      worst_range = std::max({worst_range, -fa, fa - 1.0});
      worst_mono = std::max(worst_mono, (a < b ? fa - fb : fb - fa));
      worst_lip = std::max(worst_lip, std::abs(fa - fb) - 0.5 * std::abs(a - b));
      const double fd = (exp_phi_secant(a + 1e-6, p) - exp_phi_secant(a - 1e-6, p)) / 2e-6;
      worst_deriv = std::max(worst_deriv, fd - 0.5);
    }
    checks.push_back(Check::leq("scalar/secant-range", worst_range, 0.0, 0.0));
    checks.push_back(Check::leq("scalar/secant-monotone", worst_mono, 0.0, 1e-12));
    checks.push_back(Check::leq("scalar/secant-lipschitz", worst_lip, 0.0, 1e-12));
    checks.push_back(Check::leq("scalar/secant-derivative-bound", worst_deriv, 0.0, 1e-9));
    checks.push_back(Check::close("scalar/secant-limit-positive", exp_phi_secant(1e6, p), 1.0, 1e-3));
    checks.push_back(Check::close("scalar/secant-limit-negative", exp_phi_secant(-1e6, p), 0.0, 1e-3));
  }
  {
    const int n = sc.count(10000);
    double worst_mono = -std::numeric_limits<double>::infinity();
    double worst_lower = std::numeric_limits<double>::infinity();
    double worst_upper = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double t = rng.uniform(0.01, 0.95);
      const double lam = rng.uniform(0.01, 10.0);
      const double mu = rng.uniform(-5.0, 5.0);
      const double val = deformed_power(lam, t, mu, p);
      worst_mono = std::max({worst_mono, val - deformed_power(lam * 1.02, t, mu, p),
                             val - deformed_power(lam, t, mu + 0.02, p)});
      if (mu + 2.0 * (1.0 - t) + t * std::log(2.0) >= 0.0)
        worst_lower = std::min(worst_lower, val - 0.5 * t * lam);
      const double gamma = std::exp(1.0 + (mu - t * std::log(t)) / (1.0 - t));
      worst_upper = std::min(worst_upper, (t * lam + gamma - val) / (1.0 + t * lam + gamma));
    }
    checks.push_back(Check::leq("scalar/deformed-power-monotone", worst_mono, 0.0, 1e-12));
    checks.push_back(Check::geq("scalar/deformed-power-lower-bound", worst_lower, 0.0, 1e-12));
    checks.push_back(Check::geq("scalar/deformed-power-upper-bound", worst_upper, 0.0, 1e-12));
  }
  {
    const auto scan = scan_log_square_gap();
    checks.push_back(Check::geq("scalar/constant-scan-above-floor", scan.supremum, 0.48));
    checks.push_back(Check::leq("scalar/constant-scan-feasible", scan.supremum, 0.52));
    checks.push_back(Check::geq("scalar/constant-scan-dominates-u1", scan.supremum,
                                std::pow(std::log(2.0), 2)));
  }
  return checks;
}

// ---------------------------------------------------------------------------
// operator suite: functional calculus, order tests and the monotonicity lab
// ---------------------------------------------------------------------------

inline std::vector<Check> operator_suite(const SuiteConfig& sc = {}) {
  std::vector<Check> checks;
  Rng rng(sc.seed + 1);
  const DeformationParameter p{};

  {
    const int n_trials = sc.count(50);
    double worst_rec = 0.0, worst_uni = 0.0;
    for (int i = 0; i < n_trials; ++i) {
      const int n = rng.uniform_int(2, 8);
      const Matrix a = random_hermitian(rng, n, rng.uniform(0.5, 3.0));
      const auto es = eig_hermitian(a);
      const double radius = 1.0 + es.eigenvalues.cwiseAbs().maxCoeff();
      worst_rec = std::max(worst_rec, (es.reconstruct() - a).cwiseAbs().maxCoeff() / radius);
      worst_uni = std::max(worst_uni, (es.vectors.adjoint() * es.vectors -
                                       Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
    }
    checks.push_back(Check::leq("operator/eig-reconstruction", worst_rec, 0.0, 1e-10));
    checks.push_back(Check::leq("operator/eig-unitarity", worst_uni, 0.0, 1e-10));
  }
  {
    const int n_trials = sc.count(20);
    double worst_map = 0.0, worst_rt = 0.0;
    for (int i = 0; i < n_trials; ++i) {
      const int n = rng.uniform_int(2, 6);
      const Matrix a = random_hermitian(rng, n, 2.0);
      const Matrix f = apply_fn(a, [&](double x) { return exp_phi(x, p); });
      auto lam = eigenvalues_of(a);
      std::vector<double> mapped(lam.data(), lam.data() + lam.size());
      for (auto& x : mapped) x = exp_phi(x, p);
      std::sort(mapped.begin(), mapped.end());
      const auto got = eigenvalues_of(f);
      for (Eigen::Index k = 0; k < got.size(); ++k)
        worst_map = std::max(worst_map, std::abs(got[k] - mapped[static_cast<std::size_t>(k)]));
      const Matrix back = apply_fn(f, [&](double x) { return log_phi(x, p); });
      worst_rt = std::max(worst_rt, (back - a).cwiseAbs().maxCoeff());
    }
    checks.push_back(Check::leq("operator/spectral-mapping", worst_map, 0.0, 1e-9));
    checks.push_back(Check::leq("operator/exp-log-matrix-round-trip", worst_rt, 0.0, 1e-8));
  }
  {
    const int n_trials = sc.count(50);
    int failures = 0;
    for (int i = 0; i < n_trials; ++i) {
      const int n = rng.uniform_int(2, 6);
      const Matrix a = random_hermitian(rng, n);
      if (!psd_order_leq(a, a + random_psd(rng, n, 1))) ++failures;
    }
    checks.push_back(Check::leq("operator/psd-rank-one-order", failures, 0.0));
  }
  {
    // operator monotonicity and concavity of log_phi
    SearchConfig lab;
    lab.seed = sc.seed + 2;
    const int n_trials = sc.count(500);
    const auto mono = monotone_sanity([&](double x) { return log_phi(x, p); }, n_trials, lab);
    checks.push_back(Check::leq("operator/log-phi-monotone-failures", mono.failures, 0.0));

    Rng crng(sc.seed + 3);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_trials; ++i) {
      const int n = crng.uniform_int(2, 6);
      const Matrix a = random_positive(crng, n, 0.05);
      const Matrix b = a + random_psd(crng, n, crng.uniform_int(1, n), crng.uniform(0.1, 2.0));
      const Matrix fa = apply_fn(a, [&](double x) { return log_phi(x, p); });
      const Matrix fb = apply_fn(b, [&](double x) { return log_phi(x, p); });
      const Matrix mid = apply_fn(symmetrized(0.5 * a + 0.5 * b), [&](double x) { return log_phi(x, p); });
      worst = std::min(worst, min_eigenvalue(mid - 0.5 * fa - 0.5 * fb));
    }
    checks.push_back(Check::geq("operator/log-phi-concave", worst, 0.0, 1e-8));
  }
  {
    // divided-difference pair: symmetry and continuity across the diagonal
    auto f = [&](double x) { return eval_deformed(DeformedFunction::u_minus_exp_phi, x, p); };
    auto df = [&](double x) { return eval_deformed_derivative(DeformedFunction::u_minus_exp_phi, x, p); };
    double worst_sym = 0.0, worst_cont = 0.0;
    for (int i = 0; i < sc.count(200); ++i) {
      const double u = rng.uniform(-3.0, 3.0), v = rng.uniform(-3.0, 3.0);
      worst_sym = std::max(worst_sym, std::abs(loewner2_det(f, df, u, v).determinant -
                                               loewner2_det(f, df, v, u).determinant));
      worst_cont = std::max(worst_cont,
                            std::abs(loewner2_det(f, df, u, u + 1e-7).divided_difference - df(u)));
    }
    checks.push_back(Check::leq("operator/loewner-symmetry", worst_sym, 0.0, 1e-13));
    checks.push_back(Check::leq("operator/loewner-diagonal-continuity", worst_cont, 0.0, 1e-6));
  }
  {
    // the guided probe's closed form against generic divided differences
    const double eps = std::exp(1.0) - 1.0;
    double worst = 0.0;
    for (double lam : {0.5, 1.0, 2.0}) {
      DeformationParameter q{lam};
      auto f = [&](double x) { return eval_deformed(DeformedFunction::u_minus_exp_phi, x, q); };
      auto df = [&](double x) { return eval_deformed_derivative(DeformedFunction::u_minus_exp_phi, x, q); };
      for (double y : {0.1, 0.25, 0.5, 0.9, 1.3}) {
        const ProbePoint pp = probe_point(y, eps, q);
        worst = std::max(worst, std::abs(pp.pair.determinant -
                                         loewner2_det(f, df, pp.u, pp.v).determinant));
      }
    }
    checks.push_back(Check::leq("operator/probe-closed-form-agrees", worst, 0.0, 1e-10));
  }
  {
    checks.push_back(Check::close("operator/violation-threshold", violation_threshold(1.0),
                                  1.2028411832693709, 1e-5));
    checks.push_back(Check::close("operator/violation-threshold-linear",
                                  violation_threshold(2.0), 2.0 * violation_threshold(1.0), 1e-14));
    const double eps = std::exp(1.0) - 1.0;
    checks.push_back(Check::close("operator/probe-determinant-reference",
                                  probe_point(0.5, eps).pair.determinant, -0.0067292090246058, 1e-5));
    checks.push_back(Check::geq("operator/probe-determinant-above-threshold",
                                probe_point(1.3, eps).pair.determinant, 0.0));
  }
  {
    for (auto f : {DeformedFunction::u_minus_exp_phi, DeformedFunction::log_exp_phi}) {
      SearchConfig lab;
      lab.seed = sc.seed + 4;
      const auto cert = build_counterexample(f, lab);
      const auto reval = revalidate(cert);
      const std::string base = std::string("operator/counterexample-") + to_string(f);
      checks.push_back(Check::leq(base + "-violation", cert.violation, -1e-6));
      checks.push_back(Check::geq(base + "-order-gap", cert.order_gap, 0.0, 1e-12));
      checks.push_back(Check::leq(base + "-revalidates", reval.ok ? 0.0 : 1.0, 0.0));

      // a seeded sanity scan must register the failure
      const auto scan = monotone_sanity(
          [&, f](double x) { return eval_deformed(f, x, p); }, 25, lab, &cert);
      checks.push_back(Check::geq(base + "-seeded-failures", scan.failures, 1.0));
    }
  }
  {
    // rebuilding the pipeline at rescaled lambda keeps producing certificates
    double worst = -std::numeric_limits<double>::infinity();
    for (double lam : {0.5, 1.0, 2.0}) {
      SearchConfig lab;
      lab.seed = sc.seed + 5;
      lab.lambda = DeformationParameter{lam};
      const auto cert = build_counterexample(DeformedFunction::u_minus_exp_phi, lab);
      worst = std::max(worst, cert.violation);
    }
    checks.push_back(Check::leq("operator/counterexample-lambda-scaling", worst, -1e-6));
  }
  return checks;
}

// ---------------------------------------------------------------------------
// state suite: the normalization shift, states, escorts and derivatives
// ---------------------------------------------------------------------------

inline std::vector<Check> state_suite(const SuiteConfig& sc = {}) {
  std::vector<Check> checks;
  Rng rng(sc.seed + 10);
  const DeformationParameter p = sc.lambda;

  struct Worst {
    double normalization = 0.0;
    double sigma_trace = 0.0;
    double sigma_min_eig = std::numeric_limits<double>::infinity();
    double alpha_min = std::numeric_limits<double>::infinity();
    double shift = 0.0;
    double convexity = -std::numeric_limits<double>::infinity();
    double n_monotone = -std::numeric_limits<double>::infinity();
    double escort_z_lo = std::numeric_limits<double>::infinity();
    double escort_z_hi = -std::numeric_limits<double>::infinity();
    double escort_trace = 0.0;
    double escort_spectrum_lo = std::numeric_limits<double>::infinity();
    double escort_spectrum_hi = -std::numeric_limits<double>::infinity();
    double recover = 0.0;
    int bound_failures = 0;
  } w;

  const int n_instances = sc.count(100);
  for (int trial = 0; trial < n_instances; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const FaithfulDensity rho(random_density(rng, n));
    const Direction dir = center_direction(rho, random_hermitian(rng, n, rng.uniform(0.1, 2.5)));

    const auto mp = make_state(rho, dir, p);
    w.normalization = std::max(w.normalization,
                               std::abs(normalization_value(rho, dir, mp.alpha, p) - 1.0));
    w.sigma_trace = std::max(w.sigma_trace, std::abs(mp.sigma.trace().real() - 1.0));
    w.sigma_min_eig = std::min(w.sigma_min_eig, min_eigenvalue(mp.sigma));
    w.alpha_min = std::min(w.alpha_min, mp.alpha);

    const double c = rng.uniform(-10.0, 10.0);
    const Matrix shifted = dir.matrix() + c * Matrix::Identity(n, n);
    const double mean = expectation(rho, shifted);
    const double alpha_shifted = solve_alpha(rho, center_direction(rho, shifted), p) + mean;
    w.shift = std::max(w.shift, std::abs(alpha_shifted - (mp.alpha + c)));

    const double t1 = rng.uniform(-3.0, 3.0), t2 = rng.uniform(-3.0, 3.0);
    auto alpha_at = [&](double t) {
      return solve_alpha(rho, center_direction(rho, t * dir.matrix()), p);
    };
    w.convexity = std::max(w.convexity, alpha_at(0.5 * (t1 + t2)) -
                                            0.5 * alpha_at(t1) - 0.5 * alpha_at(t2));

    const double b1 = rng.uniform(-4.0, 4.0), b2 = b1 + rng.uniform(0.01, 3.0);
    w.n_monotone = std::max(w.n_monotone, normalization_value(rho, dir, b2, p) -
                                              normalization_value(rho, dir, b1, p));

    const auto esc = escort(rho, mp, p);
    w.escort_z_lo = std::min(w.escort_z_lo, esc.z);
    w.escort_z_hi = std::max(w.escort_z_hi, esc.z);
    w.escort_trace = std::max(w.escort_trace, std::abs(esc.rho_tilde.trace().real() - 1.0));
    const auto phi_spectrum = eigenvalues_of(apply_fn(mp.Y, [&](double x) { return phi(x, p); }));
    w.escort_spectrum_lo = std::min(w.escort_spectrum_lo, phi_spectrum.minCoeff());
    w.escort_spectrum_hi = std::max(w.escort_spectrum_hi, phi_spectrum.maxCoeff());

    w.recover = std::max(w.recover, (recover_Y(rho, mp.sigma) - mp.Y).cwiseAbs().maxCoeff());
    w.bound_failures += count_failures(verify_alpha_bounds(rho, dir, p).checks);
  }

  checks.push_back(Check::leq("state/normalization-residual", w.normalization, 0.0, 1e-11));
  checks.push_back(Check::leq("state/sigma-trace", w.sigma_trace, 0.0, 1e-10));
  checks.push_back(Check::geq("state/sigma-strictly-positive", w.sigma_min_eig, 0.0, -1e-300));
  checks.push_back(Check::geq("state/alpha-nonnegative", w.alpha_min, 0.0, 1e-10));
  checks.push_back(Check::leq("state/shift-covariance", w.shift, 0.0, 1e-10));
  checks.push_back(Check::leq("state/midpoint-convexity", w.convexity, 0.0, 1e-10));
  checks.push_back(Check::leq("state/normalization-strictly-decreasing", w.n_monotone, 0.0, 0.0));
  checks.push_back(Check::geq("state/escort-z-positive", w.escort_z_lo, 0.0, -1e-300));
  checks.push_back(Check::leq("state/escort-z-at-most-half",
                              w.escort_z_hi, 1.0 / (1.0 + p.lambda), 1e-12));
  checks.push_back(Check::leq("state/escort-trace", w.escort_trace, 0.0, 1e-10));
  checks.push_back(Check::geq("state/escort-spectrum-positive", w.escort_spectrum_lo, 0.0, -1e-300));
  checks.push_back(Check::leq("state/escort-spectrum-below-one", w.escort_spectrum_hi, 1.0, 0.0));
  checks.push_back(Check::leq("state/recover-y-round-trip", w.recover, 0.0, 1e-8));
  checks.push_back(Check::leq("state/bound-report-failures", w.bound_failures, 0.0));

  {
    // simultaneously diagonal data against the bisection route
    const int n_diag = std::max(sc.count(50) / 2, 10);
    double worst = 0.0;
    for (int trial = 0; trial < n_diag; ++trial) {
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

      const double a_ref = classical_alpha(prob, k, p);
      const auto mp = make_state(rho, dir, p);
      worst = std::max(worst, std::abs(mp.alpha - a_ref));
      const auto esc = escort(rho, mp, p);
      double z_ref = 0.0, dnum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double yi = exp_phi(k[i] - a_ref, p);
        worst = std::max(worst, std::abs(mp.sigma(i, i).real() - prob[i] * yi));
        const double ph = yi / (p.lambda + yi);
        z_ref += prob[i] * ph;
        dnum += prob[i] * k[i] * ph;
      }
      for (int i = 0; i < n; ++i) {
        const double yi = exp_phi(k[i] - a_ref, p);
        worst = std::max(worst, std::abs(esc.rho_tilde(i, i).real() -
                                         prob[i] * (yi / (p.lambda + yi)) / z_ref));
      }
      worst = std::max(worst, std::abs(esc.z - z_ref));
      worst = std::max(worst, std::abs(alpha_derivative(rho, dir, 1.0, p) - dnum / z_ref));
    }
    checks.push_back(Check::leq("state/diagonal-matches-classical", worst, 0.0, 1e-10));
  }
  {
    // derivative of t -> alpha(tK) against central differences
    const int n_inst = std::max(sc.count(10) / 10, 3);
    double worst = 0.0, at_zero = 0.0;
    for (int trial = 0; trial < n_inst; ++trial) {
      const int n = rng.uniform_int(2, 6);
      const FaithfulDensity rho(random_density(rng, n));
      const Direction dir = center_direction(rho, random_hermitian(rng, n));
      auto alpha_at = [&](double t) {
        return solve_alpha(rho, center_direction(rho, t * dir.matrix()), p);
      };
      for (int j = 0; j < 20; ++j) {
        const double t = rng.uniform(-3.0, 3.0);
        const double fd = (alpha_at(t + 1e-4) - alpha_at(t - 1e-4)) / 2e-4;
        worst = std::max(worst, std::abs(alpha_derivative(rho, dir, t, p) - fd));
      }
      at_zero = std::max(at_zero, std::abs(alpha_derivative(rho, dir, 0.0, p)));
      // the derivative is nondecreasing along the curve
      double prev = alpha_derivative(rho, dir, -3.0, p);
      for (double t = -2.5; t <= 3.0; t += 0.5) {
        const double cur = alpha_derivative(rho, dir, t, p);
        worst = std::max(worst, prev - cur);
        prev = cur;
      }
    }
    checks.push_back(Check::leq("state/derivative-matches-fd", worst, 0.0, 1e-6));
    checks.push_back(Check::leq("state/derivative-zero-at-origin", at_zero, 0.0, 1e-10));
  }
  {
    // tangent functional against finite differences of t -> trace(sigma_t A)
    const int n_inst = std::max(sc.count(10) / 10, 3);
    double worst = 0.0;
    for (int trial = 0; trial < n_inst; ++trial) {
      const int n = rng.uniform_int(2, 5);
      const FaithfulDensity rho(random_density(rng, n));
      const Direction dir = center_direction(rho, random_hermitian(rng, n));
      std::vector<Matrix> probes;
      for (int i = 0; i < 5; ++i) probes.push_back(random_hermitian(rng, n));
      for (const double t : {-1.0, -0.2, 0.0, 0.4, 1.2}) {
        const auto row = geodesic_sample(rho, dir, {t}, probes, p)[0];
        for (std::size_t k = 0; k < probes.size(); ++k) {
          auto omega_at = [&](double s) {
            return geodesic_sample(rho, dir, {s}, {probes[k]}, p)[0].omega[0];
          };
          const double fd = (omega_at(t + 1e-4) - omega_at(t - 1e-4)) / 2e-4;
          worst = std::max(worst, std::abs(row.tangent[k] - fd));
        }
      }
    }
    checks.push_back(Check::leq("state/tangent-matches-fd", worst, 0.0, 1e-5));
  }
  {
    // the qubit reference point
    Matrix rho_m = 0.5 * Matrix::Identity(2, 2);
    Matrix k_m = Matrix::Zero(2, 2);
    k_m(0, 0) = 1.0;
    k_m(1, 1) = -1.0;
    const FaithfulDensity rho(rho_m);
    const Direction dir = Direction::checked(rho, k_m);
    const double alpha = solve_alpha(rho, dir);
    checks.push_back(Check::close("state/qubit-alpha-reference", alpha, 0.1299, 5e-4));
    checks.push_back(Check::close("state/qubit-alpha-vs-bisection", alpha,
                                  classical_alpha({0.5, 0.5}, {1.0, -1.0}), 1e-10));
  }
  {
    // injectivity of the state map on random pairs
    double min_gap = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
      const int n = rng.uniform_int(2, 5);
      const FaithfulDensity rho(random_density(rng, n));
      const Direction d1 = center_direction(rho, random_hermitian(rng, n));
      const Direction d2 = center_direction(rho, random_hermitian(rng, n));
      if ((d1.matrix() - d2.matrix()).cwiseAbs().maxCoeff() < 1e-6) continue;
      min_gap = std::min(min_gap, (make_state(rho, d1, p).sigma -
                                   make_state(rho, d2, p).sigma).cwiseAbs().maxCoeff());
    }
    checks.push_back(Check::geq("state/state-map-injective", min_gap, 1e-8));
  }
  return checks;
}

inline std::vector<Check> run_suite(const std::string& name, const SuiteConfig& sc = {}) {
  if (name == "scalar") return scalar_suite(sc);
  if (name == "operator") return operator_suite(sc);
  if (name == "state") return state_suite(sc);
  if (name == "all") {
    std::vector<Check> all = scalar_suite(sc);
    auto op = operator_suite(sc);
    auto st = state_suite(sc);
    all.insert(all.end(), op.begin(), op.end());
    all.insert(all.end(), st.begin(), st.end());
    return all;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

} // namespace deform

#endif // DEFORM_VERIFY_HPP
