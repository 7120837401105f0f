#pragma once

// The six canonical qubit noise channels as Kraus sets, and their
// isometric dilation into a system+environment pair.  Writing the joint
// state directly as sum_{jk} (K_j rho K_k^dag) (x) |j><k| is equivalent
// to completing the isometry to a unitary on the enlarged space and
// conjugating rho (x) |0><0|, without ever materializing that unitary:
// the extra unitary columns only act on environment states orthogonal to
// the reference state |E_0>.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohflow/linalg.hpp"
#include "cohflow/states.hpp"

namespace cohflow {

enum class ChannelKind { adc, pdc, bfc, pfc, bpfc, dc };

inline const std::array<ChannelKind, 6>& all_channels() {
  static const std::array<ChannelKind, 6> kinds = {
      ChannelKind::adc, ChannelKind::pdc, ChannelKind::bfc,
      ChannelKind::pfc, ChannelKind::bpfc, ChannelKind::dc};
  return kinds;
}

inline const char* channel_code(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::adc: return "adc";
    case ChannelKind::pdc: return "pdc";
    case ChannelKind::bfc: return "bfc";
    case ChannelKind::pfc: return "pfc";
    case ChannelKind::bpfc: return "bpfc";
    case ChannelKind::dc: return "dc";
  }
  throw std::invalid_argument("channel_code: unknown channel kind");
}

inline ChannelKind channel_from_code(std::string_view code) {
  for (ChannelKind kind : all_channels()) {
    if (code == channel_code(kind)) return kind;
  }
  throw std::invalid_argument("channel_from_code: unknown channel code '" +
                              std::string(code) + "'");
}

// Environment dimension of the dilation = number of Kraus operators.
inline std::size_t environment_dim(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::adc: return 2;
    case ChannelKind::pdc: return 3;
    case ChannelKind::bfc: return 2;
    case ChannelKind::pfc: return 2;
    case ChannelKind::bpfc: return 2;
    case ChannelKind::dc: return 4;
  }
  throw std::invalid_argument("environment_dim: unknown channel kind");
}

struct KrausSet {
  ChannelKind kind;
  double p;  // channel strength in [0, 1]
  std::vector<ComplexMatrix> ops;
};

// Canonical Kraus operators at strength p.  The phase-damping channel is
// kept in its three-operator form (sqrt(1-p) sigma_0, sqrt(p) |0><0|,
// sqrt(p) |1><1|), which dilates into a qutrit environment.
inline KrausSet kraus_set(ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("kraus_set: p must lie in [0, 1]");
  }
  const double q = 1.0 - p;
  std::vector<ComplexMatrix> ops;
  switch (kind) {
    case ChannelKind::adc: {
      ComplexMatrix k0(2, 2);
      k0(0, 0) = 1.0;
      k0(1, 1) = std::sqrt(q);
      ComplexMatrix k1(2, 2);
      k1(0, 1) = std::sqrt(p);
      ops.push_back(std::move(k0));
      ops.push_back(std::move(k1));
      break;
    }
    case ChannelKind::pdc: {
      ops.push_back(std::sqrt(q) * pauli(0));
      ComplexMatrix k1(2, 2);
      k1(0, 0) = std::sqrt(p);
      ComplexMatrix k2(2, 2);
      k2(1, 1) = std::sqrt(p);
      ops.push_back(std::move(k1));
      ops.push_back(std::move(k2));
      break;
    }
    case ChannelKind::bfc: {
      ops.push_back(std::sqrt(q) * pauli(0));
      ops.push_back(std::sqrt(p) * pauli(1));
      break;
    }
    case ChannelKind::pfc: {
      ops.push_back(std::sqrt(q) * pauli(0));
      ops.push_back(std::sqrt(p) * pauli(3));
      break;
    }
    case ChannelKind::bpfc: {
      ops.push_back(std::sqrt(q) * pauli(0));
      ops.push_back(std::sqrt(p) * pauli(2));
      break;
    }
    case ChannelKind::dc: {
      ops.push_back(std::sqrt(1.0 - 0.75 * p) * pauli(0));
      for (int j = 1; j <= 3; ++j) {
        ops.push_back(std::sqrt(0.25 * p) * pauli(j));
      }
      break;
    }
  }
  return KrausSet{kind, p, std::move(ops)};
}

// Joint system+environment state on C^2 (x) C^d_E, stored in the basis
// |s e> with index s*d_E + e.  The public constructor verifies the full
// density-matrix contract; trusted() is for states valid by construction.
class JointState {
 public:
  JointState(ComplexMatrix mat, std::size_t env_dim)
      : mat_(std::move(mat)), env_dim_(env_dim) {
    validate_basic(mat_, env_dim_);
    const auto values = hermitian_eigenvalues(mat_);
    if (values.back() < -1e-10) {
      throw std::invalid_argument(
          "JointState: negative eigenvalue " + std::to_string(values.back()));
    }
  }

  static JointState trusted(ComplexMatrix mat, std::size_t env_dim) {
    validate_basic(mat, env_dim);
    return JointState(std::move(mat), env_dim, TrustedTag{});
  }

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t env_dim() const { return env_dim_; }
  std::size_t dim() const { return mat_.rows(); }

 private:
  struct TrustedTag {};
  JointState(ComplexMatrix mat, std::size_t env_dim, TrustedTag)
      : mat_(std::move(mat)), env_dim_(env_dim) {}

  static void validate_basic(const ComplexMatrix& m, std::size_t env_dim) {
    if (env_dim < 2) {
      throw std::invalid_argument("JointState: environment dimension must be >= 2");
    }
    if (!m.square() || m.rows() != 2 * env_dim) {
      throw std::invalid_argument(
          "JointState: matrix dimension does not match 2 * env_dim");
    }
    if (!is_hermitian(m, 1e-10)) {
      throw std::invalid_argument("JointState: matrix is not Hermitian");
    }
    if (std::abs(trace(m) - cxd(1.0)) > 1e-10) {
      throw std::invalid_argument("JointState: trace differs from 1");
    }
  }

  ComplexMatrix mat_;
  std::size_t env_dim_;
};

inline void require_qubit_kraus(const KrausSet& ks, const char* op) {
  if (ks.ops.empty()) {
    throw std::invalid_argument(std::string(op) + ": empty Kraus set");
  }
  for (const ComplexMatrix& k : ks.ops) {
    if (k.rows() != 2 || k.cols() != 2) {
      throw std::invalid_argument(std::string(op) +
                                  ": Kraus operators must be 2x2");
    }
  }
}

// U (rho (x) |E_0><E_0|) U^dag for the dilation isometry
// U |s>|E_0> = sum_j (K_j |s>) |E_j>, i.e. blockwise
// rho_SE[(s j), (s' k)] = (K_j rho K_k^dag)[s, s'].
inline JointState evolve_joint(const DensityMatrix& rho, const KrausSet& ks) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("evolve_joint: system state must be 2x2");
  }
  require_qubit_kraus(ks, "evolve_joint");
  const std::size_t de = ks.ops.size();

  std::vector<ComplexMatrix> left;  // K_j rho, reused across the k loop
  left.reserve(de);
  for (const ComplexMatrix& k : ks.ops) left.push_back(k * rho.mat());

  ComplexMatrix joint(2 * de, 2 * de);
  for (std::size_t j = 0; j < de; ++j) {
    for (std::size_t k = 0; k < de; ++k) {
      const ComplexMatrix block = left[j] * adjoint(ks.ops[k]);
      for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < 2; ++t)
          joint(s * de + j, t * de + k) = block(s, t);
    }
  }
  return JointState::trusted(std::move(joint), de);
}

enum class Subsystem { system, environment };

inline DensityMatrix partial_trace(const JointState& js, Subsystem keep) {
  const std::size_t de = js.env_dim();
  const ComplexMatrix& m = js.mat();
  if (keep == Subsystem::system) {
    ComplexMatrix out(2, 2);
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t t = 0; t < 2; ++t) {
        cxd sum = 0.0;
        for (std::size_t e = 0; e < de; ++e) sum += m(s * de + e, t * de + e);
        out(s, t) = sum;
      }
    return DensityMatrix::trusted(std::move(out));
  }
  ComplexMatrix out(de, de);
  for (std::size_t e = 0; e < de; ++e)
    for (std::size_t f = 0; f < de; ++f) {
      cxd sum = 0.0;
      for (std::size_t s = 0; s < 2; ++s) sum += m(s * de + e, s * de + f);
      out(e, f) = sum;
    }
  return DensityMatrix::trusted(std::move(out));
}

// sum_j K_j rho K_j^dag without the environment bookkeeping.
inline DensityMatrix apply_channel(const DensityMatrix& rho,
                                   const KrausSet& ks) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("apply_channel: system state must be 2x2");
  }
  require_qubit_kraus(ks, "apply_channel");
  ComplexMatrix out(2, 2);
  for (const ComplexMatrix& k : ks.ops) {
    out = out + k * rho.mat() * adjoint(k);
  }
  return DensityMatrix::trusted(std::move(out));
}

// Kraus mixing freedom: K'_j = sum_l V[j][l] K_l for unitary V leaves the
// channel (and the reduced dynamics) unchanged while reshuffling the
// environment basis of the dilation.
inline KrausSet mix_kraus(const KrausSet& ks, const ComplexMatrix& v) {
  require_qubit_kraus(ks, "mix_kraus");
  if (!v.square() || v.rows() != ks.ops.size()) {
    throw std::invalid_argument(
        "mix_kraus: mixing matrix dimension must equal the Kraus count");
  }
  if (!is_unitary(v, 1e-10)) {
    throw std::invalid_argument("mix_kraus: mixing matrix is not unitary");
  }
  std::vector<ComplexMatrix> mixed;
  mixed.reserve(ks.ops.size());
  for (std::size_t j = 0; j < ks.ops.size(); ++j) {
    ComplexMatrix kj(2, 2);
    for (std::size_t l = 0; l < ks.ops.size(); ++l) {
      kj = kj + v(j, l) * ks.ops[l];
    }
    mixed.push_back(std::move(kj));
  }
  return KrausSet{ks.kind, ks.p, std::move(mixed)};
}

// Exponential relaxation p(t) = 1 - exp(-t/T).
inline double prob_from_time(double t, double T) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("prob_from_time: relaxation time must be positive");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("prob_from_time: time must be non-negative");
  }
  return -std::expm1(-t / T);
}

}  // namespace cohflow
