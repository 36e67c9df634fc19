#ifndef DEFORM_TESTS_ORACLES_HPP
#define DEFORM_TESTS_ORACLES_HPP

// Independent reference computations for the test suite.  Everything here
// deliberately avoids the library's solver paths: plain bisection, boost's
// Lambert W, and central finite differences.

#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/special_functions/lambert_w.hpp>

namespace oracle {

// Inverse of v - 1 + lambda*log(v) by bisection only.
inline double exp_phi_bisect(double u, double lambda = 1.0) {
  double lo = std::numeric_limits<double>::min();
  double hi = 1.0 + std::max(u, 0.0) + lambda + 1.0;
  auto f = [&](double v) { return (v - 1.0) + lambda * std::log(v) - u; };
  if (f(lo) > 0.0 || f(hi) < 0.0) throw std::runtime_error("exp_phi_bisect: bracket failure");
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// For lambda = 1 the defining equation is equivalent to v*e^v = e^(1+u),
// so exp_phi(u) = W0(e^(1+u)).  Valid while e^(1+u) stays in range.
inline double exp_phi_lambert(double u) {
  return boost::math::lambert_w0(std::exp(1.0 + u));
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Normalization shift for a probability vector p and centered scores k:
// the unique a >= 0 with sum_i p_i * exp_phi(k_i - a) = 1, by bisection.
inline double classical_alpha_bisect(const std::vector<double>& p, const std::vector<double>& k,
                                     double lambda = 1.0) {
  auto N = [&](double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * exp_phi_bisect(k[i] - b, lambda);
    return s;
  };
  if (std::abs(N(0.0) - 1.0) < 1e-15) return 0.0;
  double hi = 1.0;
  while (N(hi) > 1.0) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (N(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace oracle

#endif // DEFORM_TESTS_ORACLES_HPP
