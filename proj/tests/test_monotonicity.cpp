#include <catch2/catch.hpp>

#include <cmath>

#include "deform/monotonicity.hpp"
#include "deform/scalar.hpp"
#include "oracles.hpp"

using namespace deform;

TEST_CASE("violation threshold", "[monotonicity]") {
  // (3 - e)/(e^2 - 3e + 1), frozen from high-precision evaluation
  CHECK(violation_threshold(1.0) == Approx(1.2028411832693709).epsilon(1e-14));
  CHECK(violation_threshold(2.0) == Approx(2.0 * violation_threshold(1.0)).epsilon(1e-15));
  CHECK(violation_threshold(0.5) == Approx(0.5 * violation_threshold(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(violation_threshold(0.0), std::domain_error);
  CHECK_THROWS_AS(violation_threshold(-1.0), std::domain_error);
}

TEST_CASE("probe point at the canonical parameters", "[monotonicity]") {
  const double eps = std::exp(1.0) - 1.0;
  const ProbePoint pp = probe_point(0.5, eps);
  CHECK(pp.x == Approx(0.5 * std::exp(1.0)).epsilon(1e-15));
  CHECK(pp.u == Approx(0.6659937336695773).epsilon(1e-12));
  CHECK(pp.v == Approx(-1.1931471805599453).epsilon(1e-12));
  CHECK(pp.pair.determinant == Approx(-0.0067292090246058).margin(1e-12));
  // the difference identity u - v = eps*y + log(1+eps)
  CHECK(pp.u - pp.v == Approx(eps * 0.5 + std::log1p(eps)).margin(1e-10));

  const ProbePoint above = probe_point(1.3, eps);
  CHECK(above.pair.determinant == Approx(0.00027128631439319).margin(1e-12));
  CHECK(above.pair.determinant > 0.0);

  CHECK_THROWS_AS(probe_point(0.0, eps), std::domain_error);
  CHECK_THROWS_AS(probe_point(0.5, 0.0), std::domain_error);
}

TEST_CASE("determinant changes sign exactly at the threshold", "[monotonicity]") {
  const double eps = std::exp(1.0) - 1.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    const double thr = violation_threshold(lam);
    CHECK(probe_point(0.999 * thr, eps, {lam}).pair.determinant < 0.0);
    CHECK(probe_point(1.001 * thr, eps, {lam}).pair.determinant > 0.0);
    CHECK(probe_point(thr, eps, {lam}).pair.determinant == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("closed form agrees with generic divided differences", "[monotonicity]") {
  const double eps = std::exp(1.0) - 1.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    DeformationParameter p{lam};
    for (double y : {0.1, 0.5, 0.9, 1.3, 2.0}) {
      const ProbePoint pp = probe_point(y, eps, p);
      const auto generic = loewner2_det(
          [&](double x) { return eval_deformed(DeformedFunction::u_minus_exp_phi, x, p); },
          [&](double x) { return eval_deformed_derivative(DeformedFunction::u_minus_exp_phi, x, p); },
          pp.u, pp.v);
      CHECK(pp.pair.determinant == Approx(generic.determinant).margin(1e-10));
      CHECK(pp.pair.divided_difference == Approx(generic.divided_difference).margin(1e-10));

      const auto scaled = rescale_pair(pp.pair, DeformedFunction::log_exp_phi, lam);
      const auto generic_log = loewner2_det(
          [&](double x) { return eval_deformed(DeformedFunction::log_exp_phi, x, p); },
          [&](double x) { return eval_deformed_derivative(DeformedFunction::log_exp_phi, x, p); },
          pp.u, pp.v);
      CHECK(scaled.determinant == Approx(generic_log.determinant).margin(1e-10));
    }
  }
}

TEST_CASE("guided counterexample for u - exp_phi", "[monotonicity]") {
  const auto cert = build_counterexample(DeformedFunction::u_minus_exp_phi);
  CHECK(cert.guided);
  CHECK(cert.y == Approx(0.5));
  CHECK(cert.perturbation == Approx(0.5));  // the largest ladder entry already works
  CHECK(cert.violation < -1e-6);
  CHECK(cert.violation == Approx(-0.00248244).margin(1e-6));
  CHECK(cert.order_gap >= -1e-12);
  CHECK(psd_order_leq(cert.B, cert.A));
  CHECK(cert.loewner_point.determinant < 0.0);

  // the same pair violates the difference form directly:
  // min eig of (A - B) - (exp_phi(A) - exp_phi(B)) < 0
  const Matrix ea = apply_fn(cert.A, [](double x) { return exp_phi(x); });
  const Matrix eb = apply_fn(cert.B, [](double x) { return exp_phi(x); });
  CHECK(min_eigenvalue((cert.A - cert.B) - (ea - eb)) == Approx(cert.violation).margin(1e-10));

  const auto reval = revalidate(cert);
  CHECK(reval.ok);
  CHECK(reval.violation == Approx(cert.violation).margin(1e-12));
}

TEST_CASE("counterexample for log(exp_phi)", "[monotonicity]") {
  const auto cert = build_counterexample(DeformedFunction::log_exp_phi);
  CHECK(cert.violation < -1e-6);
  CHECK(revalidate(cert).ok);
  // at lambda = 1 the two functions differ by a constant, so the violation matches
  const auto other = build_counterexample(DeformedFunction::u_minus_exp_phi);
  CHECK(cert.violation == Approx(other.violation).margin(1e-10));
}

TEST_CASE("certificates exist across lambda", "[monotonicity]") {
  for (double lam : {0.5, 1.0, 2.0}) {
    SearchConfig cfg;
    cfg.lambda = DeformationParameter{lam};
    for (auto f : {DeformedFunction::u_minus_exp_phi, DeformedFunction::log_exp_phi}) {
      const auto cert = build_counterexample(f, cfg);
      CHECK(cert.violation < -1e-6);
      CHECK(cert.lambda == lam);
      CHECK(revalidate(cert).ok);
    }
  }
}

TEST_CASE("an unreachable violation target exhausts the search", "[monotonicity]") {
  SearchConfig cfg;
  cfg.violation_tol = 1.0;  // far beyond any achievable violation
  CHECK_THROWS_AS(build_counterexample(DeformedFunction::u_minus_exp_phi, cfg), search_exhausted);
}

TEST_CASE("tampered certificates fail revalidation", "[monotonicity]") {
  auto cert = build_counterexample(DeformedFunction::u_minus_exp_phi);
  cert.A(0, 0) += 5.0;  // breaks the recorded eigen-data
  CHECK_FALSE(revalidate(cert).ok);
  auto cert2 = build_counterexample(DeformedFunction::u_minus_exp_phi);
  cert2.violation = -1.0;  // stored value no longer reproduces
  CHECK_FALSE(revalidate(cert2).ok);
}

TEST_CASE("monotone sanity scans", "[monotonicity]") {
  SearchConfig cfg;
  SECTION("log_phi never fails") {
    const auto report = monotone_sanity([](double x) { return log_phi(x); }, 500, cfg);
    CHECK(report.trials == 500);
    CHECK(report.failures == 0);
  }
  SECTION("the identity never fails") {
    const auto report = monotone_sanity([](double x) { return x; }, 100, cfg);
    CHECK(report.failures == 0);
  }
  SECTION("u - exp_phi fails when seeded near a certificate") {
    const auto cert = build_counterexample(DeformedFunction::u_minus_exp_phi, cfg);
    const auto report = monotone_sanity([](double x) { return x - exp_phi(x); }, 50, cfg, &cert);
    CHECK(report.trials == 55);
    CHECK(report.failures >= 1);
    CHECK(report.worst_min_eigenvalue < -1e-6);
  }
  CHECK_THROWS_AS(monotone_sanity([](double x) { return x; }, 0, cfg), std::invalid_argument);
}

TEST_CASE("deformed function registry", "[monotonicity]") {
  CHECK(deformed_function_from_name("u-minus-exp-phi") == DeformedFunction::u_minus_exp_phi);
  CHECK(deformed_function_from_name("log-exp-phi") == DeformedFunction::log_exp_phi);
  CHECK_THROWS_AS(deformed_function_from_name("nope"), std::invalid_argument);
  // derivative sanity against finite differences
  for (double u : {-2.0, 0.0, 1.5}) {
    for (auto f : {DeformedFunction::u_minus_exp_phi, DeformedFunction::log_exp_phi}) {
      const double fd = oracle::central_difference(
          [&](double x) { return eval_deformed(f, x); }, u, 1e-6);
      CHECK(eval_deformed_derivative(f, u) == Approx(fd).margin(1e-8));
    }
  }
}
