#ifndef DEFORM_STATE_HPP
#define DEFORM_STATE_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "deform/errors.hpp"
#include "deform/hermitian.hpp"
#include "deform/report.hpp"
#include "deform/scalar.hpp"

namespace deform {

/// Strictly positive density matrix rho with unit trace.  It plays the role
/// of the reference state; its square root is the reference vector of the
/// Hilbert-Schmidt representation, where algebra elements act by left
/// multiplication and directions act by right multiplication.
class FaithfulDensity {
 public:
  explicit FaithfulDensity(const Matrix& rho, double faithfulness_threshold = 1e-10) {
    if (rho.rows() != rho.cols() || rho.rows() == 0)
      throw hypothesis_error("FaithfulDensity: matrix must be square and non-empty");
    if (!is_hermitian(rho))
      throw hypothesis_error("FaithfulDensity: matrix is not Hermitian");
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-12)
      throw hypothesis_error("FaithfulDensity: trace must be 1, got " + std::to_string(tr));
    rho_ = symmetrized(rho);
    const EigenSystem es = eig_hermitian(rho_);
    min_eig_ = es.eigenvalues.minCoeff();
    if (!(min_eig_ > faithfulness_threshold))
      throw hypothesis_error("FaithfulDensity: smallest eigenvalue " + std::to_string(min_eig_) +
                             " is below the faithfulness threshold");
    RealVector root = es.eigenvalues.cwiseSqrt();
    sqrt_ = symmetrized(es.vectors * root.asDiagonal() * es.vectors.adjoint());
    inv_sqrt_ = symmetrized(es.vectors * root.cwiseInverse().asDiagonal() * es.vectors.adjoint());
  }

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  double min_eigenvalue() const { return min_eig_; }
  const Matrix& sqrt() const { return sqrt_; }
  const Matrix& inv_sqrt() const { return inv_sqrt_; }

 private:
  Matrix rho_, sqrt_, inv_sqrt_;
  double min_eig_ = 0.0;
};

/// Expectation of a Hermitian observable in the reference state.
inline double expectation(const FaithfulDensity& rho, const Matrix& k) {
  if (k.rows() != rho.dim() || k.cols() != rho.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  return (rho.matrix() * k).trace().real();
}

/// Hermitian direction K with vanishing expectation against the reference
/// state.  Carries its spectral decomposition; every downstream quantity is a
/// function of the eigenvalues weighted by the reference state.
class Direction {
 public:
  /// Validates the centering hypothesis instead of silently enforcing it;
  /// use center_direction for the explicit recentering.
  static Direction checked(const FaithfulDensity& rho, const Matrix& k, double tol = 1e-10) {
    if (!is_hermitian(k)) throw hypothesis_error("Direction: matrix is not Hermitian");
    const double mean = expectation(rho, k);
    if (std::abs(mean) > tol)
      throw hypothesis_error("Direction: expectation " + std::to_string(mean) +
                             " is not zero; recenter first (CLI: pass --center)");
    return Direction(symmetrized(k));
  }

  const Matrix& matrix() const { return k_; }
  const EigenSystem& eigensystem() const { return eig_; }
  int dim() const { return static_cast<int>(k_.rows()); }

 private:
  explicit Direction(Matrix k) : k_(std::move(k)), eig_(eig_hermitian(k_)) {}
  Matrix k_;
  EigenSystem eig_;
  friend Direction center_direction(const FaithfulDensity&, const Matrix&);
};

/// Subtracts the expectation so the result is a valid Direction; idempotent.
inline Direction center_direction(const FaithfulDensity& rho, const Matrix& k) {
  if (!is_hermitian(k)) throw hypothesis_error("center_direction: matrix is not Hermitian");
  const Matrix centered = symmetrized(k) - expectation(rho, k) * Matrix::Identity(k.rows(), k.cols());
  return Direction(centered);
}

namespace detail {

// Weights of the direction's eigenvectors under the reference state:
// w_i = (v_i, rho v_i).  Strictly positive and summing to 1.
inline RealVector direction_weights(const FaithfulDensity& rho, const Direction& d) {
  if (d.dim() != rho.dim()) throw std::invalid_argument("direction and state dimensions differ");
  const Matrix& v = d.eigensystem().vectors;
  return (v.adjoint() * rho.matrix() * v).diagonal().real();
}

inline double weighted_normalization(const RealVector& w, const RealVector& lam, double beta,
                                     const DeformationParameter& p, const ScalarEvalConfig& cfg) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) s += w[i] * exp_phi(lam[i] - beta, p, cfg);
  return s;
}

// Newton iteration for the normalization shift on spectral data, safeguarded
// by a bracket.  N is convex and strictly decreasing with N(0) >= 1 for
// centered directions, so the iteration starting at 0 ascends monotonically.
inline double solve_alpha_weighted(const RealVector& w, const RealVector& lam,
                                   const DeformationParameter& p, const ScalarEvalConfig& cfg) {
  auto value = [&](double beta) { return weighted_normalization(w, lam, beta, p, cfg) - 1.0; };

  double lo = 0.0;
  double g_lo = value(lo);
  if (std::abs(g_lo) <= 5e-15) return lo;
  if (g_lo < 0.0) {
    // possible only through rounding of a barely-centered direction; the
    // root is then a hair below zero
    lo = -1.0;
    for (int i = 0; i < 60 && value(lo) < 0.0; ++i) lo *= 2.0;
  }
  double hi = 1.0;
  {
    int i = 0;
    for (; i < 200 && value(hi) >= 0.0; ++i) hi *= 2.0;
    if (i == 200) throw convergence_error("solve_alpha: failed to bracket the root");
  }

  double beta = std::max(lo, 0.0);
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const double g = value(beta);
    if (std::abs(g) <= 5e-15) return beta;
    if (g > 0.0) lo = beta; else hi = beta;
    double slope = 0.0;  // N'(beta) = -sum w_i phi(exp_phi(lam_i - beta))
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double v = exp_phi(lam[i] - beta, p, cfg);
      slope -= w[i] * v / (p.lambda + v);
    }
    double next = beta - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - beta);
    beta = next;
    if (step <= 1e-16 * (1.0 + std::abs(beta))) break;
  }
  if (std::abs(value(beta)) > 1e-11)
    throw convergence_error("solve_alpha: residual above tolerance at beta = " + std::to_string(beta));
  return beta;
}

} // namespace detail

/// N(beta) = trace(rho * exp_phi(K - beta)); strictly decreasing from
/// +infinity to 0, equal to 1 exactly at the normalization shift.
inline double normalization_value(const FaithfulDensity& rho, const Direction& d, double beta,
                                  DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  if (!std::isfinite(beta)) throw std::domain_error("normalization_value: beta must be finite");
  return detail::weighted_normalization(detail::direction_weights(rho, d),
                                        d.eigensystem().eigenvalues, beta, p, cfg);
}

/// The unique (non-negative, for centered directions) shift alpha with
/// N(alpha) = 1, solved to |N(alpha) - 1| <= 1e-11 or better.
inline double solve_alpha(const FaithfulDensity& rho, const Direction& d,
                          DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  return detail::solve_alpha_weighted(detail::direction_weights(rho, d),
                                      d.eigensystem().eigenvalues, p, cfg);
}

/// A point of the state family: direction K, shift alpha, positive operator
/// Y = exp_phi(K - alpha) and the density sigma = rho^{1/2} Y rho^{1/2} of
/// the associated vector state.
struct ModelPoint {
  Direction direction;
  double alpha = 0.0;
  Matrix Y;
  Matrix sigma;
};

inline ModelPoint make_state(const FaithfulDensity& rho, const Direction& d,
                             DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  const RealVector w = detail::direction_weights(rho, d);
  const RealVector& lam = d.eigensystem().eigenvalues;
  const double alpha = detail::solve_alpha_weighted(w, lam, p, cfg);

  RealVector y(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) y[i] = exp_phi(lam[i] - alpha, p, cfg);
  const Matrix& v = d.eigensystem().vectors;
  ModelPoint mp{d, alpha, symmetrized(v * y.asDiagonal() * v.adjoint()), Matrix()};
  mp.sigma = symmetrized(rho.sqrt() * mp.Y * rho.sqrt());

  const double trY = (rho.matrix() * mp.Y).trace().real();
  const double trS = mp.sigma.trace().real();
  if (std::abs(trY - 1.0) > 1e-10 || std::abs(trS - 1.0) > 1e-10)
    throw convergence_error("make_state: normalization drifted (trace rho*Y = " + std::to_string(trY) + ")");
  return mp;
}

/// Inverts the state map: Y = rho^{-1/2} sigma rho^{-1/2}.  Together with
/// make_state this witnesses injectivity of K -> sigma at fixed rho.
inline Matrix recover_Y(const FaithfulDensity& rho, const Matrix& sigma) {
  if (sigma.rows() != rho.dim() || sigma.cols() != rho.dim())
    throw std::invalid_argument("recover_Y: dimension mismatch");
  if (!is_hermitian(sigma)) throw hypothesis_error("recover_Y: sigma is not Hermitian");
  return symmetrized(rho.inv_sqrt() * sigma * rho.inv_sqrt());
}

/// Escort of a model point: density proportional to rho^{1/2} phi(Y) rho^{1/2},
/// with normalizer z = trace(rho * phi(Y)) in (0, 1/(1+lambda)].
struct EscortDensity {
  Matrix rho_tilde;
  double z = 0.0;
};

inline EscortDensity escort(const FaithfulDensity& rho, const ModelPoint& mp,
                            DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  const RealVector w = detail::direction_weights(rho, mp.direction);
  const RealVector& lam = mp.direction.eigensystem().eigenvalues;
  const Matrix& v = mp.direction.eigensystem().vectors;

  RealVector phi_y(lam.size());
  double z = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double yi = exp_phi(lam[i] - mp.alpha, p, cfg);
    phi_y[i] = yi / (p.lambda + yi);
    z += w[i] * phi_y[i];
  }
  if (!(z > 0.0) || z > 1.0 / (1.0 + p.lambda) + 1e-12)
    throw convergence_error("escort: normalizer " + std::to_string(z) + " escaped its range");

  const Matrix phi_of_y = symmetrized(v * phi_y.asDiagonal() * v.adjoint());
  return EscortDensity{symmetrized(rho.sqrt() * phi_of_y * rho.sqrt()) / z, z};
}

/// Derivative of t -> alpha(tK): the escort expectation of K,
///   trace(rho K phi(Y_t)) / trace(rho phi(Y_t)).
inline double alpha_derivative(const FaithfulDensity& rho, const Direction& d, double t,
                               DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  if (!std::isfinite(t)) throw std::domain_error("alpha_derivative: t must be finite");
  const RealVector w = detail::direction_weights(rho, d);
  const RealVector& lam = d.eigensystem().eigenvalues;
  const double alpha_t = detail::solve_alpha_weighted(w, t * lam, p, cfg);
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double yi = exp_phi(t * lam[i] - alpha_t, p, cfg);
    const double ph = yi / (p.lambda + yi);
    num += w[i] * lam[i] * ph;
    den += w[i] * ph;
  }
  return num / den;
}

/// One sample of the curve t -> state(tK).
struct GeodesicRow {
  double t = 0.0;
  double alpha = 0.0;
  double dalpha_dt = 0.0;
  double escort_z = 0.0;
  std::vector<double> omega;    ///< trace(sigma_t * A) per probe
  std::vector<double> tangent;  ///< d/dt trace(sigma_t * A) per probe, escort form
};

/// Samples states, escorts, the shift derivative and tangent values along
/// t -> state(tK).  The tangent of a probe A is
///   trace(M K phi(Y_t)) - dalpha/dt * trace(M phi(Y_t)),  M = rho^{1/2} A rho^{1/2},
/// which equals the t-derivative of trace(sigma_t A).
inline std::vector<GeodesicRow> geodesic_sample(const FaithfulDensity& rho, const Direction& d,
                                                const std::vector<double>& t_grid,
                                                const std::vector<Matrix>& probes,
                                                DeformationParameter p = {},
                                                ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  for (const Matrix& a : probes) {
    if (a.rows() != rho.dim() || a.cols() != rho.dim())
      throw std::invalid_argument("geodesic_sample: probe dimension mismatch");
    if (!is_hermitian(a)) throw hypothesis_error("geodesic_sample: probes must be Hermitian");
  }
  const RealVector w = detail::direction_weights(rho, d);
  const RealVector& lam = d.eigensystem().eigenvalues;
  const Matrix& v = d.eigensystem().vectors;

  std::vector<Matrix> m;  // rho^{1/2} A rho^{1/2} per probe
  m.reserve(probes.size());
  for (const Matrix& a : probes) m.push_back(Matrix(rho.sqrt() * a * rho.sqrt()));

  std::vector<GeodesicRow> rows;
  rows.reserve(t_grid.size());
  for (const double t : t_grid) {
    GeodesicRow row;
    row.t = t;
    row.alpha = detail::solve_alpha_weighted(w, t * lam, p, cfg);

    RealVector y(lam.size()), phi_y(lam.size());
    double z = 0.0, num = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      y[i] = exp_phi(t * lam[i] - row.alpha, p, cfg);
      phi_y[i] = y[i] / (p.lambda + y[i]);
      z += w[i] * phi_y[i];
      num += w[i] * lam[i] * phi_y[i];
    }
    row.escort_z = z;
    row.dalpha_dt = num / z;

    const Matrix y_mat = v * y.asDiagonal() * v.adjoint();
    const Matrix phi_mat = v * phi_y.asDiagonal() * v.adjoint();
    const Matrix k_phi_mat = v * (lam.cwiseProduct(phi_y)).asDiagonal() * v.adjoint();
    for (const Matrix& mi : m) {
      row.omega.push_back((mi * y_mat).trace().real());
      row.tangent.push_back((mi * k_phi_mat).trace().real() -
                            row.dalpha_dt * (mi * phi_mat).trace().real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Checks every bound the shift alpha satisfies in terms of s = ||K Omega||
/// = sqrt(trace(rho K^2)).  Entries whose hypothesis fails are reported as
/// skipped, never as failed.
struct BoundReport {
  double alpha = 0.0;
  double s = 0.0;
  std::vector<Check> checks;
  bool all_passed() const { return deform::all_passed(checks); }
};

inline BoundReport verify_alpha_bounds(const FaithfulDensity& rho, const Direction& d,
                                       DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  const RealVector w = detail::direction_weights(rho, d);
  const RealVector& lam = d.eigensystem().eigenvalues;

  BoundReport report;
  report.alpha = detail::solve_alpha_weighted(w, lam, p, cfg);
  report.s = std::sqrt(lam.cwiseAbs2().dot(w));
  const double alpha = report.alpha, s = report.s;

  report.checks.push_back(Check::leq("alpha-nonnegative", 0.0, alpha, 1e-10));

  // Everything below rests on the quadratic majorant of exp_phi, which is
  // specific to lambda = 1; at other deformations the hypotheses fail.
  const bool standard = p.lambda == 1.0;

  if (standard && s < 1.0)
    report.checks.push_back(Check::leq("alpha-below-s-squared", alpha, s * s, 1e-12 * (1.0 + s * s)));
  else
    report.checks.push_back(Check::skipped_check("alpha-below-s-squared", alpha, s * s));

  if (standard && s <= 6.0) {
    const double floor = 6.0 - std::sqrt(36.0 - s * s);
    report.checks.push_back(Check::leq("alpha-above-quadratic-floor", floor, alpha, 1e-10));
    report.checks.push_back(Check::leq("quadratic-floor-dominates-s2-over-12", s * s / 12.0, floor, 1e-12));
  } else {
    report.checks.push_back(Check::skipped_check("alpha-above-quadratic-floor", 0.0, alpha));
    report.checks.push_back(Check::skipped_check("quadratic-floor-dominates-s2-over-12"));
  }

  if (standard && s <= 3.0)
    report.checks.push_back(Check::leq("alpha-at-most-s", alpha, s, 1e-10));
  else
    report.checks.push_back(Check::skipped_check("alpha-at-most-s", alpha, s));

  if (standard) {
    // N(beta) <= 1 - beta/2 + (s^2 + beta^2)/12 at deterministically sampled betas
    double worst_gap = -std::numeric_limits<double>::infinity();
    const double span = s + 1.0;
    for (int j = 0; j < 10; ++j) {
      const double beta = -span + 2.0 * span * static_cast<double>(j) / 9.0;
      const double n = detail::weighted_normalization(w, lam, beta, p, cfg);
      const double bound = 1.0 - 0.5 * beta + (s * s + beta * beta) / 12.0;
      worst_gap = std::max(worst_gap, n - bound);
    }
    report.checks.push_back(Check::leq("normalization-quadratic-bound", worst_gap, 0.0, 1e-10));
  } else {
    report.checks.push_back(Check::skipped_check("normalization-quadratic-bound"));
  }
  return report;
}

/// Commutative special case on a probability vector: the unique a with
/// sum_i p_i exp_phi(k_i - a) = 1, solved by plain bisection.  Serves as the
/// independent reference for simultaneously diagonal data.
inline double classical_alpha(const std::vector<double>& prob, const std::vector<double>& k,
                              DeformationParameter p = {}, ScalarEvalConfig cfg = {}) {
  p.validate();
  cfg.validate();
  if (prob.empty() || prob.size() != k.size())
    throw std::invalid_argument("classical_alpha: probability and score vectors must match");
  double sum = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    if (!(prob[i] > 0.0)) throw hypothesis_error("classical_alpha: probabilities must be strictly positive");
    sum += prob[i];
    mean += prob[i] * k[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw hypothesis_error("classical_alpha: probabilities must sum to 1");
  if (std::abs(mean) > 1e-10) throw hypothesis_error("classical_alpha: scores must be centered");

  auto value = [&](double beta) {
    double s = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) s += prob[i] * exp_phi(k[i] - beta, p, cfg);
    return s - 1.0;
  };
  if (std::abs(value(0.0)) <= 5e-15) return 0.0;
  double lo = -1e-8;  // absorbs rounding of barely-centered input
  if (value(lo) < 0.0) throw convergence_error("classical_alpha: no bracket below zero");
  double hi = 1.0;
  int guard = 0;
  while (value(hi) >= 0.0 && guard++ < 200) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (value(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace deform

#endif // DEFORM_STATE_HPP
