#ifndef DEFORM_HERMITIAN_HPP
#define DEFORM_HERMITIAN_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "deform/errors.hpp"

namespace deform {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline double hermiticity_defect(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  return hermiticity_defect(a) <= tol * scale;
}

inline Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

/// Spectral decomposition of a Hermitian matrix: ascending eigenvalues and a
/// unitary matrix of column eigenvectors.
struct EigenSystem {
  RealVector eigenvalues;
  Matrix vectors;

  Matrix reconstruct() const {
    return vectors * eigenvalues.asDiagonal() * vectors.adjoint();
  }
};

inline EigenSystem eig_hermitian(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_hermitian: matrix must be square");
  if (!is_hermitian(a))
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian (defect " +
                                std::to_string(hermiticity_defect(a)) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(a));
  if (solver.info() != Eigen::Success)
    throw convergence_error("eig_hermitian: eigensolver failed to converge");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

/// Functional calculus f(A) = U f(Lambda) U^*.  fn must be defined on the
/// spectrum; a non-finite value raises a domain error.
template <typename Fn>
Matrix apply_fn(const Matrix& a, Fn&& fn) {
  EigenSystem es = eig_hermitian(a);
  RealVector mapped(es.eigenvalues.size());
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
    const double y = fn(es.eigenvalues[i]);
    if (!std::isfinite(y))
      throw std::domain_error("apply_fn: function not finite at eigenvalue " +
                              std::to_string(es.eigenvalues[i]));
    mapped[i] = y;
  }
  return symmetrized(es.vectors * mapped.asDiagonal() * es.vectors.adjoint());
}

inline RealVector eigenvalues_of(const Matrix& a) { return eig_hermitian(a).eigenvalues; }

inline double min_eigenvalue(const Matrix& a) { return eigenvalues_of(a).minCoeff(); }

inline double spectral_radius(const Matrix& a) { return eigenvalues_of(a).cwiseAbs().maxCoeff(); }

/// Positive-semidefinite order test: A <= B up to a tolerance relative to the
/// spectral radius of the difference.
inline bool psd_order_leq(const Matrix& a, const Matrix& b, double tol = 1e-10) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("psd_order_leq: dimension mismatch");
  const RealVector ev = eigenvalues_of(b - a);
  const double radius = ev.cwiseAbs().maxCoeff();
  return ev.minCoeff() >= -tol * (1.0 + radius);
}

/// Order-2 divided-difference data of a scalar function at a pair of points.
/// A negative determinant certifies failure of operator monotonicity.
struct LoewnerPair {
  double u = 0.0, v = 0.0;
  double fprime_u = 0.0, fprime_v = 0.0;
  double divided_difference = 0.0;
  double determinant = 0.0;
};

/// Builds the LoewnerPair for fn with derivative dfn.  For |u - v| below
/// switch_threshold the divided difference degenerates to the derivative at
/// the midpoint, which keeps the pair symmetric and avoids cancellation.
template <typename Fn, typename DFn>
LoewnerPair loewner2_det(Fn&& fn, DFn&& dfn, double u, double v, double switch_threshold = 1e-7) {
  LoewnerPair out;
  out.u = u;
  out.v = v;
  out.fprime_u = dfn(u);
  out.fprime_v = dfn(v);
  out.divided_difference = std::abs(u - v) < switch_threshold
                               ? dfn(0.5 * (u + v))
                               : (fn(u) - fn(v)) / (u - v);
  out.determinant = out.fprime_u * out.fprime_v - out.divided_difference * out.divided_difference;
  return out;
}

} // namespace deform

#endif // DEFORM_HERMITIAN_HPP
