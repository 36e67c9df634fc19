#ifndef DEFORM_SCALAR_HPP
#define DEFORM_SCALAR_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include "deform/errors.hpp"

namespace deform {

/// Parameter of the deformation phi(u) = u / (lambda + u), lambda > 0.
///
/// phi generates the deformed logarithm
///     log_phi(v) = v - 1 + lambda * log(v),  v > 0,
/// whose inverse exp_phi is defined on the whole real line, convex,
/// strictly increasing and asymptotically linear for large arguments.
struct DeformationParameter {
  double lambda = 1.0;

  void validate() const {
    if (!std::isfinite(lambda) || lambda <= 0.0)
      throw std::invalid_argument("DeformationParameter: lambda must be a positive real, got " +
                                  std::to_string(lambda));
  }
};

/// Solver settings for the scalar inversions.
struct ScalarEvalConfig {
  double newton_tol = 1e-12;           ///< relative tolerance on exp_phi
  int max_iter = 100;
  double asymptotic_threshold = 700.0; ///< |u| beyond which asymptotic branches replace direct exponentials

  void validate() const {
    if (!(newton_tol > 0.0) || newton_tol > 1e-6)
      throw std::invalid_argument("ScalarEvalConfig: newton_tol must lie in (0, 1e-6]");
    if (max_iter < 10) throw std::invalid_argument("ScalarEvalConfig: max_iter must be >= 10");
    if (!(asymptotic_threshold > 1.0)) throw std::invalid_argument("ScalarEvalConfig: bad asymptotic_threshold");
  }
};

/// phi(u) = u / (lambda + u) for u > 0; strictly increasing with range (0, 1).
inline double phi(double u, DeformationParameter p = {}) {
  p.validate();
  if (!(u > 0.0)) throw std::domain_error("phi: argument must be positive, got " + std::to_string(u));
  return u / (p.lambda + u);
}

/// Deformed logarithm log_phi(v) = v - 1 + lambda * log(v) for v > 0.
/// Concave, strictly increasing, log_phi(1) = 0 exactly.
inline double log_phi(double v, DeformationParameter p = {}) {
  p.validate();
  if (!(v > 0.0)) throw std::domain_error("log_phi: argument must be positive, got " + std::to_string(v));
  return (v - 1.0) + p.lambda * std::log(v);
}

namespace detail {

// Solves exp(w) + lambda*w = 1 + u for w = log(exp_phi(u)).
//
// F is convex and strictly increasing, so Newton started where F >= 0
// descends monotonically onto the root; a bracket guards the first steps.
// Working in w keeps the solve well conditioned for very negative u,
// where exp_phi itself underflows.
inline double solve_log_exp_phi(double u, double lambda, const ScalarEvalConfig& cfg) {
  if (!std::isfinite(u)) throw std::domain_error("exp_phi: argument must be finite");

  // v = 1 + u - lambda*log(v) is a contraction for v >> lambda; start at
  // v0 = 1 + u.  For lambda comparable to u the iterates can leave (0, inf),
  // so that regime falls through to the bracketed Newton below.
  if (u > cfg.asymptotic_threshold && 2.0 * lambda * std::log1p(u) < 1.0 + u) {
    double v = 1.0 + u;
    for (int i = 0; i < cfg.max_iter; ++i) {
      const double next = 1.0 + u - lambda * std::log(v);
      const bool done = std::abs(next - v) <= cfg.newton_tol * next;
      v = next;
      if (done) return std::log(v);
    }
    throw convergence_error("exp_phi: fixed-point branch did not converge at u = " + std::to_string(u));
  }

  if (u < -cfg.asymptotic_threshold) {
    // v = exp((u + 1 - v)/lambda) with v ~ 0; one correction step suffices.
    double v = std::exp((u + 1.0) / lambda);
    for (int i = 0; i < 8 && v > 0.0; ++i) {
      const double next = std::exp((u + 1.0 - v) / lambda);
      const bool done = std::abs(next - v) <= cfg.newton_tol * next;
      v = next;
      if (done) break;
    }
    return (u + 1.0 - v) / lambda;
  }

  // Bracket [w_lo, w_hi] with F(w_lo) <= 0 <= F(w_hi).
  double w_lo, w_hi, w;
  if (u >= 0.0) {
    w_lo = 0.0;
    w_hi = std::log1p(u);
    w = w_hi; // F(log(1+u)) = lambda*log(1+u) >= 0
  } else {
    w_lo = u / lambda; // exp_phi(u) >= exp(u/lambda) for u <= 0
    w_hi = 0.0;
    w = 0.0; // F(0) = -u >= 0
  }

  for (int i = 0; i < cfg.max_iter; ++i) {
    const double ew = std::exp(w);
    const double f = ew + lambda * w - 1.0 - u;
    if (f == 0.0) return w;
    if (f > 0.0) w_hi = w; else w_lo = w;
    double next = w - f / (ew + lambda);
    if (!(next >= w_lo && next <= w_hi)) next = 0.5 * (w_lo + w_hi);
    const double step = std::abs(next - w);
    w = next;
    if (step <= cfg.newton_tol * (1.0 + std::abs(w))) {
      // one polishing step; quadratic convergence makes it essentially exact
      const double ew2 = std::exp(w);
      w -= (ew2 + lambda * w - 1.0 - u) / (ew2 + lambda);
      return w;
    }
  }
  throw convergence_error("exp_phi: Newton did not converge at u = " + std::to_string(u));
}

} // namespace detail

/// Deformed exponential: the unique v > 0 with log_phi(v) = u.
///
/// exp_phi(0) = 1, exp_phi is 1-Lipschitz and sandwiched between
/// exp((u+1)/lambda) and exp(u/lambda) for u < 0.  Results below roughly
/// exp(-745) underflow to zero; use log_exp_phi when only the logarithm
/// is needed.
inline double exp_phi(double u, DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  return std::exp(detail::solve_log_exp_phi(u, p.lambda, cfg));
}

/// log(exp_phi(u)), evaluated stably for all u (no underflow for u << 0).
inline double log_exp_phi(double u, DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  return detail::solve_log_exp_phi(u, p.lambda, cfg);
}

/// d/du exp_phi(u) = phi(exp_phi(u)), strictly inside (0, 1).
inline double exp_phi_derivative(double u, DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  const double v = exp_phi(u, p, cfg);
  return v / (p.lambda + v);
}

/// Secant slope (exp_phi(u) - 1)/u with its removable singularity filled in:
/// the value at u = 0 is 1/(1 + lambda).  Increasing, range (0, 1).
inline double exp_phi_secant(double u, DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  if (!std::isfinite(u)) throw std::domain_error("exp_phi_secant: argument must be finite");
  const double lam = p.lambda;
  if (std::abs(u) < 1e-5) {
    // Taylor around 0; the cubic remainder is below 1e-15 here.
    const double c0 = 1.0 / (1.0 + lam);
    const double c1 = lam / (2.0 * std::pow(1.0 + lam, 3));
    const double c2 = lam * (lam - 2.0) / (6.0 * std::pow(1.0 + lam, 5));
    return c0 + u * (c1 + u * c2);
  }
  return (exp_phi(u, p, cfg) - 1.0) / u;
}

/// exp_phi(t * log_phi(base) + shift): the deformed analogue of base^t * e^shift.
inline double deformed_power(double base, double t, double shift,
                             DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  if (!(t > 0.0)) throw std::domain_error("deformed_power: t must be positive");
  if (!(base > 0.0)) throw std::domain_error("deformed_power: base must be positive");
  return exp_phi(t * log_phi(base, p) + shift, p, cfg);
}

/// Pointwise gap [log phi(u)]^2 - [log_phi(u)]^2 whose supremum over u > 0 is finite.
inline double log_square_gap(double u, DeformationParameter p = {}) {
  const double a = std::log(phi(u, p));
  const double b = log_phi(u, p);
  return a * a - b * b;
}

struct GapScanResult {
  double supremum = 0.0;
  double arg_u = 0.0;
  std::size_t points = 0;
};

/// Supremum of log_square_gap over a log-uniform grid.
/// The grid must cover at least [1e-8, 1e8] with at least 1e5 points; the
/// gap peaks below u = 1 and decays to -infinity at both ends, so this
/// range brackets the maximum comfortably.
inline GapScanResult scan_log_square_gap(double u_min = 1e-8, double u_max = 1e8,
                                         std::size_t points = 200001,
                                         DeformationParameter p = {}) {
  p.validate();
  if (!(u_min > 0.0) || u_min > 1e-8 || u_max < 1e8 || points < 100000)
    throw std::invalid_argument("scan_log_square_gap: grid must cover [1e-8, 1e8] with >= 1e5 points");
  const double lo = std::log(u_min), hi = std::log(u_max);
  GapScanResult best{-std::numeric_limits<double>::infinity(), u_min, points};
  for (std::size_t i = 0; i < points; ++i) {
    const double u = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    const double g = log_square_gap(u, p);
    if (g > best.supremum) {
      best.supremum = g;
      best.arg_u = u;
    }
  }
  return best;
}

} // namespace deform

#endif // DEFORM_SCALAR_HPP
