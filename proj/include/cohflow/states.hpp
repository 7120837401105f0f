#pragma once

// Qubit states: the Bloch-vector parametrization of 2x2 density matrices,
// validated density-matrix wrappers of any dimension, the l1-norm
// coherence functional, and a deterministic random-state sampler.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "cohflow/linalg.hpp"

namespace cohflow {

struct BlochVector {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double norm2() const { return r1 * r1 + r2 * r2 + r3 * r3; }
  double norm() const { return std::sqrt(norm2()); }
};

// Slack granted past |r| = 1 so states constructed from rounded
// coefficients are not rejected.
inline constexpr double kBlochBallTol = 1e-12;

// A density matrix: Hermitian, unit trace, positive semidefinite.  The
// public constructor verifies all three; trusted() skips the spectral
// test and is meant for matrices that are valid by construction (images
// of valid states under trace-preserving maps, Bloch vectors inside the
// ball), where an eigensolve per call would be wasted work.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
    validate_basic(mat_);
    const auto values = hermitian_eigenvalues(mat_);
    if (values.back() < -1e-10) {
      throw std::invalid_argument(
          "DensityMatrix: negative eigenvalue " + std::to_string(values.back()));
    }
  }

  static DensityMatrix trusted(ComplexMatrix mat) {
    validate_basic(mat);
    return DensityMatrix(std::move(mat), TrustedTag{});
  }

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.rows(); }

 private:
  struct TrustedTag {};
  DensityMatrix(ComplexMatrix mat, TrustedTag) : mat_(std::move(mat)) {}

  static void validate_basic(const ComplexMatrix& m) {
    if (!m.square()) {
      throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    if (!is_hermitian(m, 1e-10)) {
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(trace(m) - cxd(1.0)) > 1e-10) {
      throw std::invalid_argument("DensityMatrix: trace differs from 1");
    }
  }

  ComplexMatrix mat_;
};

// rho = (sigma_0 + r . sigma)/2
inline DensityMatrix density_from_bloch(const BlochVector& r) {
  if (r.norm2() > 1.0 + kBlochBallTol) {
    throw std::invalid_argument(
        "density_from_bloch: Bloch vector lies outside the unit ball");
  }
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + r.r3);
  m(0, 1) = cxd(0.5 * r.r1, -0.5 * r.r2);
  m(1, 0) = cxd(0.5 * r.r1, 0.5 * r.r2);
  m(1, 1) = 0.5 * (1.0 - r.r3);
  return DensityMatrix::trusted(std::move(m));
}

inline BlochVector bloch_from_density(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw std::invalid_argument(
        "bloch_from_density: expected a 2x2 density matrix");
  }
  const ComplexMatrix& m = rho.mat();
  return BlochVector{2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
                     m(0, 0).real() - m(1, 1).real()};
}

// l1 norm of coherence: sum of the moduli of all off-diagonal entries.
inline double l1_coherence(const ComplexMatrix& m) {
  if (!m.square()) {
    throw std::invalid_argument("l1_coherence: matrix must be square");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) sum += std::abs(m(i, j));
  return sum;
}

inline double l1_coherence(const DensityMatrix& rho) {
  return l1_coherence(rho.mat());
}

enum class StateKind { pure, mixed };

namespace detail {

// Uniform double in (0, 1] with 53-bit resolution.  Drawn from the raw
// mt19937_64 stream rather than <random> distributions, whose output is
// implementation-defined; sampled states must be reproducible bit-for-bit
// across standard libraries.
inline double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

// Three standard normals via Box-Muller (the fourth variate of the two
// pairs is discarded).
inline std::array<double, 3> gaussian_triple(std::mt19937_64& rng) {
  constexpr double tau = 6.283185307179586;
  const double u1 = unit_open(rng);
  const double u2 = unit_open(rng);
  const double u3 = unit_open(rng);
  const double u4 = unit_open(rng);
  const double radial1 = std::sqrt(-2.0 * std::log(u1));
  const double radial2 = std::sqrt(-2.0 * std::log(u3));
  return {radial1 * std::cos(tau * u2), radial1 * std::sin(tau * u2),
          radial2 * std::cos(tau * u4)};
}

}  // namespace detail

// Deterministic sampler: pure states are uniform on the Bloch sphere
// (normalized Gaussian triple); mixed states are uniform in the ball
// (same direction, radius u^{1/3}).  Equal seeds give equal vectors on
// every platform.
inline BlochVector sample_random_bloch(std::uint64_t seed, StateKind kind) {
  std::mt19937_64 rng(seed);
  std::array<double, 3> g{};
  double len = 0.0;
  do {
    g = detail::gaussian_triple(rng);
    len = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
  } while (len < 1e-12);
  double scale = 1.0 / len;
  if (kind == StateKind::mixed) {
    scale *= std::cbrt(detail::unit_open(rng));
  }
  return BlochVector{scale * g[0], scale * g[1], scale * g[2]};
}

}  // namespace cohflow
