#pragma once

// Shared helpers for the test suites: seeded random matrix generators
// and an independent eigenvalue route (characteristic polynomial +
// Durand-Kerner root finding) used to cross-check the Jacobi solver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cohflow/linalg.hpp"

namespace testsupport {

using cohflow::ComplexMatrix;
using cohflow::cxd;

inline double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

inline double gaussian(std::mt19937_64& rng) {
  constexpr double tau = 6.283185307179586;
  const double u1 = unit_open(rng);
  const double u2 = unit_open(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(tau * u2);
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                                   std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = gaussian(rng);
      const double im = gaussian(rng);
      m(i, j) = cxd(re, im);
    }
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n, n);
  return 0.5 * (g + adjoint(g));
}

// Full-rank random density matrix G G^dag / tr(G G^dag).
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n, n);
  const ComplexMatrix w = g * adjoint(g);
  return (1.0 / trace(w).real()) * w;
}

// Haar-ish random unitary: modified Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  ComplexMatrix a = random_matrix(rng, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      cxd dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(a(i, j)) * a(i, k);
      for (std::size_t i = 0; i < n; ++i) a(i, k) -= dot * a(i, j);
    }
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) len += std::norm(a(i, k));
    len = std::sqrt(len);
    for (std::size_t i = 0; i < n; ++i) a(i, k) = a(i, k) / len;
  }
  return a;
}

// Monic characteristic polynomial by Faddeev-LeVerrier:
// p(x) = x^n + c[n-1] x^{n-1} + ... + c[0].
inline std::vector<cxd> char_poly(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<cxd> c(n);
  ComplexMatrix m = a;
  c[n - 1] = -trace(m);
  for (std::size_t k = 2; k <= n; ++k) {
    ComplexMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
    m = a * shifted;
    c[n - k] = -trace(m) / static_cast<double>(k);
  }
  return c;
}

// All roots of a monic polynomial, Durand-Kerner iteration.
inline std::vector<cxd> poly_roots(const std::vector<cxd>& c) {
  const std::size_t n = c.size();
  const auto eval = [&c, n](cxd x) {
    cxd v = 1.0;
    for (std::size_t k = n; k-- > 0;) v = v * x + c[k];
    return v;
  };
  std::vector<cxd> z(n);
  const cxd seed(0.4, 0.9);  // standard non-real starting spread
  cxd w = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    w *= seed;
    z[k] = w;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cxd denom = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      const cxd step = eval(z[i]) / denom;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

// Real parts of the characteristic-polynomial roots, sorted descending.
// For matrices similar to a Hermitian one the imaginary parts are noise.
inline std::vector<double> char_poly_eigenvalues(const ComplexMatrix& a) {
  std::vector<double> out;
  for (cxd z : poly_roots(char_poly(a))) out.push_back(z.real());
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

}  // namespace testsupport
