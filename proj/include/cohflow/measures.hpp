#pragma once

// Coherence and entanglement measures on the joint system+environment
// state: the l1 coherence split into local and non-local parts, Wootters
// concurrence for qubit environments, and negativity from the partial
// transpose.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cohflow/channels.hpp"
#include "cohflow/linalg.hpp"
#include "cohflow/states.hpp"

namespace cohflow {

struct CoherenceSplit {
  double total;        // C(rho_SE)
  double system;       // C(rho_S)
  double environment;  // C(rho_E)
  double local;        // system + environment
  double nonlocal;     // total - local
};

inline CoherenceSplit coherence_split(const JointState& js) {
  CoherenceSplit out{};
  out.total = l1_coherence(js.mat());
  out.system = l1_coherence(partial_trace(js, Subsystem::system));
  out.environment = l1_coherence(partial_trace(js, Subsystem::environment));
  out.local = out.system + out.environment;
  out.nonlocal = out.total - out.local;
  // Every channel output decomposes with a non-negative non-local part;
  // anything below rounding noise means the state did not come from the
  // pipeline this split is meant for.
  if (out.nonlocal < -1e-10) {
    throw std::logic_error(
        "coherence_split: non-local coherence fell below the sanity bound");
  }
  return out;
}

// Wootters concurrence of a two-qubit state via the Hermitian route:
// the eigenvalues of sqrt(rho) rho~ sqrt(rho) equal those of rho rho~
// (similar matrices) but come from an explicitly Hermitian PSD matrix,
// so a real-symmetric eigensolver applies.  rho~ is the spin-flipped
// state (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y).
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument(
        "concurrence: expected a 4x4 (qubit pair) density matrix");
  }
  const ComplexMatrix flip = kron(pauli(2), pauli(2));
  const ComplexMatrix tilde = flip * conjugate(rho.mat()) * flip;
  const ComplexMatrix root = psd_sqrt(rho.mat());
  const std::vector<double> values =
      hermitian_eigenvalues(root * tilde * root);
  // The joint states met here have rank <= 2, so at least two of the four
  // eigenvalues are structural zeros; clamp their dust before the sqrt
  // blows it up (see kSpectralDustTol).
  const double dust = kSpectralDustTol * std::max(0.0, values.front());
  double c = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double s = values[k] <= dust ? 0.0 : std::sqrt(values[k]);
    c += (k == 0) ? s : -s;
  }
  return std::max(0.0, c);
}

inline double concurrence(const JointState& js) {
  if (js.env_dim() != 2) {
    throw std::invalid_argument(
        "concurrence: defined for 2-dimensional environments only");
  }
  return concurrence(DensityMatrix::trusted(js.mat()));
}

// Transpose on the environment factor:
// out[(s e), (s' e')] = in[(s e'), (s' e)].
inline ComplexMatrix partial_transpose(const JointState& js) {
  const std::size_t de = js.env_dim();
  const ComplexMatrix& m = js.mat();
  ComplexMatrix out(2 * de, 2 * de);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t t = 0; t < 2; ++t)
      for (std::size_t e = 0; e < de; ++e)
        for (std::size_t f = 0; f < de; ++f)
          out(s * de + e, t * de + f) = m(s * de + f, t * de + e);
  return out;
}

// Negativity E_n = (||T_E(rho)||_1 - 1)/2 = sum of the magnitudes of the
// negative partial-transpose eigenvalues.
inline double negativity(const JointState& js) {
  const std::vector<double> values =
      hermitian_eigenvalues(partial_transpose(js));
  double sum = 0.0;
  for (double v : values) sum += std::abs(v) - v;
  return 0.5 * sum;
}

// Residual between non-local coherence and twice the negativity.  For the
// qutrit-environment dilation of phase damping this is non-negative and
// closes only at p = 0 and p = 1.
inline double pdc_gap(const JointState& js) {
  return coherence_split(js).nonlocal - 2.0 * negativity(js);
}

}  // namespace cohflow
