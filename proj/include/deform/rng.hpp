#ifndef DEFORM_RNG_HPP
#define DEFORM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "deform/hermitian.hpp"

namespace deform {

/// Deterministic generator (splitmix64 core) used by the verification suites
/// and searches.  Draws depend only on the seed, not on platform library
/// distributions, so reports are reproducible run to run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Standard normal via the polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double x, y, s;
    do {
      x = uniform(-1.0, 1.0);
      y = uniform(-1.0, 1.0);
      s = x * x + y * y;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = y * m;
    has_spare_ = true;
    return x * m;
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Random Hermitian matrix with entries of order `scale`.
inline Matrix random_hermitian(Rng& rng, int n, double scale = 1.0) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  return symmetrized(g) * (scale / std::sqrt(2.0));
}

/// Random strictly positive matrix with smallest eigenvalue at least `floor`.
inline Matrix random_positive(Rng& rng, int n, double floor = 0.05, double scale = 1.0) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Matrix a = (g * g.adjoint()) * (scale / n) + floor * Matrix::Identity(n, n);
  return symmetrized(a);
}

/// Random PSD perturbation of rank `rank` and overall size `scale`.
inline Matrix random_psd(Rng& rng, int n, int rank, double scale = 1.0) {
  Matrix p = Matrix::Zero(n, n);
  for (int r = 0; r < rank; ++r) {
    Eigen::VectorXcd w(n);
    for (int i = 0; i < n; ++i) w(i) = Complex(rng.normal(), rng.normal());
    w.normalize();
    p += scale * (w * w.adjoint());
  }
  return symmetrized(p);
}

/// Random faithful density matrix: strictly positive with unit trace.
inline Matrix random_density(Rng& rng, int n, double floor = 0.02) {
  Matrix a = random_positive(rng, n, floor);
  a /= a.trace().real();
  return symmetrized(a);
}

} // namespace deform

#endif // DEFORM_RNG_HPP
