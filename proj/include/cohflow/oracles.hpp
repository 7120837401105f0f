#pragma once

// Closed-form predictions for the coherence split (and, where available,
// the concurrence) of each channel's dilated output, as functions of the
// initial Bloch vector and the channel strength.  These are evaluated
// independently of the numerical pipeline and serve as its oracle.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "cohflow/channels.hpp"
#include "cohflow/states.hpp"

namespace cohflow {

struct PredictionRecord {
  ChannelKind kind;
  double p;
  double c_total;
  double c_system;
  double c_environment;
  double c_nonlocal;
  // Concurrence closed form; absent for the qutrit/ququart environments,
  // where the reported entanglement is 2 * negativity instead.
  std::optional<double> concurrence;
};

struct PdcNegativityCoeffs {
  double c2;
  double c1;
  double c0;
};

// Non-trivial quartic factor of the characteristic polynomial of the
// partially transposed phase-damping output: the full degree-6 polynomial
// is lambda^2 (lambda^4 - lambda^3 + c2 lambda^2 + c1 lambda + c0).
inline PdcNegativityCoeffs pdc_negativity_coeffs(const BlochVector& r,
                                                 double p) {
  const double rsq = r.norm2();
  const double planar = r.r1 * r.r1 + r.r2 * r.r2;
  const double s = p * (2.0 - p);
  return PdcNegativityCoeffs{
      (1.0 - rsq) / 4.0,
      s * planar / 4.0,
      s * s * planar * (r.r3 * r.r3 - 1.0) / 16.0,
  };
}

inline PredictionRecord predict(ChannelKind kind, const BlochVector& r,
                                double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("predict: p must lie in [0, 1]");
  }
  if (r.norm2() > 1.0 + kBlochBallTol) {
    throw std::invalid_argument(
        "predict: Bloch vector lies outside the unit ball");
  }
  const double q = 1.0 - p;
  const double c0 = std::sqrt(r.r1 * r.r1 + r.r2 * r.r2);  // initial C(rho_S)
  const double root_pq = std::sqrt(p * q);

  PredictionRecord out{kind, p, 0.0, 0.0, 0.0, 0.0, std::nullopt};
  switch (kind) {
    case ChannelKind::adc: {
      out.c_system = std::sqrt(q) * c0;
      out.c_environment = std::sqrt(p) * c0;
      out.c_nonlocal = root_pq * (1.0 - r.r3);
      out.c_total = (std::sqrt(q) + std::sqrt(p)) * c0 + out.c_nonlocal;
      // Amplitude damping is the one channel whose dilation stays a pure
      // two-qubit problem with E_c equal to the non-local coherence.
      out.concurrence = out.c_nonlocal;
      break;
    }
    case ChannelKind::pdc: {
      out.c_system = q * c0;
      out.c_environment = 2.0 * root_pq;
      out.c_nonlocal = (p + 2.0 * root_pq) * c0;
      out.c_total = (1.0 + 2.0 * root_pq) * c0 + 2.0 * root_pq;
      break;
    }
    case ChannelKind::bfc: {
      const double flip = 1.0 - 2.0 * p;
      out.c_system = std::sqrt(r.r1 * r.r1 + r.r2 * r.r2 * flip * flip);
      out.c_environment = 2.0 * root_pq * std::abs(r.r1);
      out.c_total = (1.0 + 2.0 * root_pq) * c0 + 2.0 * root_pq;
      out.c_nonlocal = (1.0 + 2.0 * root_pq) * c0 - out.c_system +
                       2.0 * root_pq * (1.0 - std::abs(r.r1));
      const double x = r.r2 * r.r2 + r.r3 * r.r3;
      const double y = 1.0 - r.r1 * r.r1;
      out.concurrence = 2.0 * root_pq * std::min(std::sqrt(x), std::sqrt(y));
      break;
    }
    case ChannelKind::pfc: {
      const double flip = std::abs(1.0 - 2.0 * p);
      out.c_system = flip * c0;
      out.c_environment = 2.0 * root_pq * std::abs(r.r3);
      out.c_total = (1.0 + 2.0 * root_pq) * c0 + 2.0 * root_pq;
      out.c_nonlocal = (1.0 + 2.0 * root_pq - flip) * c0 +
                       2.0 * root_pq * (1.0 - std::abs(r.r3));
      const double x = r.r2 * r.r2 + r.r1 * r.r1;
      const double y = 1.0 - r.r3 * r.r3;
      out.concurrence = 2.0 * root_pq * std::min(std::sqrt(x), std::sqrt(y));
      break;
    }
    case ChannelKind::bpfc: {
      // Bit-phase flip mirrors the bit flip with r1 <-> r2.
      const double flip = 1.0 - 2.0 * p;
      out.c_system = std::sqrt(r.r2 * r.r2 + r.r1 * r.r1 * flip * flip);
      out.c_environment = 2.0 * root_pq * std::abs(r.r2);
      out.c_total = (1.0 + 2.0 * root_pq) * c0 + 2.0 * root_pq;
      out.c_nonlocal = (1.0 + 2.0 * root_pq) * c0 - out.c_system +
                       2.0 * root_pq * (1.0 - std::abs(r.r2));
      const double x = r.r1 * r.r1 + r.r3 * r.r3;
      const double y = 1.0 - r.r2 * r.r2;
      out.concurrence = 2.0 * root_pq * std::min(std::sqrt(x), std::sqrt(y));
      break;
    }
    case ChannelKind::dc: {
      const double u = 0.25 * p;
      const double v = 1.0 - 3.0 * u;
      const double w = std::sqrt(u * v) + u;
      const double su = std::sqrt(u);
      const double sv = std::sqrt(v);
      const double amp = (3.0 * su + sv) * (3.0 * su + sv);
      const double abs_sum =
          std::abs(r.r1) + std::abs(r.r2) + std::abs(r.r3);
      out.c_system = q * c0;
      out.c_environment = 2.0 * w * abs_sum;
      out.c_nonlocal = (amp - q) * c0 + 2.0 * w * (3.0 - abs_sum);
      out.c_total = amp * c0 + 6.0 * w;
      break;
    }
  }
  return out;
}

}  // namespace cohflow
