#pragma once

// Dense complex linear algebra for the small matrices this project works
// with (dimension <= 8): arithmetic, tensor products, Hermitian
// eigendecomposition, positive-semidefinite square roots and the trace
// norm.  Everything is value-based and allocation-happy on purpose; at
// these sizes clarity beats cleverness.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohflow {

using cxd = std::complex<double>;

inline bool finite_entry(cxd z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Row-major dense complex matrix.  Dimensions are fixed at construction
// and always positive; entries supplied from outside are rejected unless
// finite.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(checked_size(rows, cols)) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cxd> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    checked_size(rows, cols);
    if (entries_.size() != rows_ * cols_) {
      throw std::invalid_argument(
          "ComplexMatrix: entry count does not match rows*cols");
    }
    for (cxd z : entries_) {
      if (!finite_entry(z)) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
      }
    }
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cxd operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  cxd& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  const std::vector<cxd>& entries() const { return entries_; }

 private:
  static std::size_t checked_size(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
    return rows * cols;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<cxd> entries_;
};

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                               const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
  }
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("operator*: inner dimensions do not match");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cxd aik = a(i, k);
      if (aik == cxd{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

inline ComplexMatrix operator*(cxd s, const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = s * m(i, j);
  return out;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& m) {
  return cxd(s, 0.0) * m;
}

inline ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

inline ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = std::conj(m(i, j));
  return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

inline cxd trace(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("trace: matrix must be square");
  cxd t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Tensor (Kronecker) product; the left factor indexes the coarse blocks.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cxd aij = a(i, j);
      if (aij == cxd{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (cxd z : m.entries()) best = std::max(best, std::abs(z));
  return best;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

inline double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (cxd z : m.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

inline bool is_unitary(const ComplexMatrix& m, double tol = 1e-10) {
  if (!m.square()) return false;
  return max_abs_diff(adjoint(m) * m, ComplexMatrix::identity(m.rows())) <= tol;
}

// Pauli matrices sigma_0..sigma_3 (identity, x, y, z).
inline const ComplexMatrix& pauli(int j) {
  static const std::array<ComplexMatrix, 4> sigma = [] {
    const cxd i1(0.0, 1.0);
    return std::array<ComplexMatrix, 4>{
        ComplexMatrix(2, 2, {1.0, 0.0, 0.0, 1.0}),
        ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}),
        ComplexMatrix(2, 2, {0.0, -i1, i1, 0.0}),
        ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0})};
  }();
  if (j < 0 || j > 3) {
    throw std::invalid_argument("pauli: index must be in 0..3");
  }
  return sigma[static_cast<std::size_t>(j)];
}

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k is the eigenvector for values[k]
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
//
// Each rotation U differs from the identity only in the (p,q) plane,
//   U[p][p] = c,            U[p][q] = s,
//   U[q][p] = -conj(s),     U[q][q] = c,
// with c real and s = t*c * A[p][q]/|A[p][q]|, where t is the smaller-
// magnitude root of the usual tangent equation.  U^dag A U then has an
// exact zero at (p,q); sweeping over all planes drives the off-diagonal
// mass to zero quadratically.
inline HermitianEigen hermitian_eigensystem(const ComplexMatrix& h,
                                            double herm_tol = 1e-10) {
  if (!h.square()) {
    throw std::invalid_argument("hermitian_eigensystem: matrix must be square");
  }
  if (!is_hermitian(h, herm_tol)) {
    throw std::invalid_argument(
        "hermitian_eigensystem: matrix is not Hermitian within tolerance");
  }
  const std::size_t n = h.rows();

  // Work on the exactly-Hermitian average so rounding dust in the input
  // cannot push the iteration off the Hermitian manifold.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cxd avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double stop = 1e-15 * std::max(1.0, frobenius_norm(a));
  constexpr int kMaxSweeps = 60;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
    if (std::sqrt(off) <= stop) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cxd apq = a(p, q);
        const double babs = std::abs(apq);
        if (babs == 0.0) continue;
        if (babs <= 1e-300) {  // far below any scale we care about
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * babs);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const cxd s = (t * c) * (apq / babs);

        // Rows p,q of U^dag A ...
        for (std::size_t k = 0; k < n; ++k) {
          const cxd ap = a(p, k);
          const cxd aq = a(q, k);
          a(p, k) = c * ap - s * aq;
          a(q, k) = std::conj(s) * ap + c * aq;
        }
        // ... then columns p,q of (U^dag A) U.
        for (std::size_t k = 0; k < n; ++k) {
          const cxd ap = a(k, p);
          const cxd aq = a(k, q);
          a(k, p) = c * ap - std::conj(s) * aq;
          a(k, q) = s * ap + c * aq;
        }
        // The rotation annihilates (p,q) exactly; keep the matrix exactly
        // Hermitian by writing the known values instead of rounding dust.
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        // Accumulate V <- V U.
        for (std::size_t k = 0; k < n; ++k) {
          const cxd vp = v(k, p);
          const cxd vq = v(k, q);
          v(k, p) = c * vp - std::conj(s) * vq;
          v(k, q) = s * vp + c * vq;
        }
      }
    }
  }
  if (!converged) {
    throw std::runtime_error("hermitian_eigensystem: Jacobi sweep limit hit "
                             "without convergence");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&a](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h,
                                                 double herm_tol = 1e-10) {
  return hermitian_eigensystem(h, herm_tol).values;
}

// Relative threshold under which an eigenvalue counts as rounding dust
// on a zero.  The square root is not Lipschitz at zero, so dust of size
// 1e-16 would otherwise surface as 1e-8 noise after sqrt; the states this
// project meets are rank-deficient with genuinely zero eigenvalues, and
// clamping restores them exactly.
inline constexpr double kSpectralDustTol = 1e-12;

// Square root of a positive-semidefinite matrix via its eigensystem.
// Eigenvalues in [-1e-8, 0) are treated as rounding noise and clamped
// (as is positive dust below kSpectralDustTol relative to the leading
// eigenvalue); anything more negative is a genuine violation and is
// rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const HermitianEigen es = hermitian_eigensystem(m);
  const std::size_t n = m.rows();
  const double dust = kSpectralDustTol * std::max(0.0, es.values.front());
  std::vector<double> root(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (es.values[k] < -1e-8) {
      throw std::invalid_argument(
          "psd_sqrt: matrix is not positive semidefinite (eigenvalue " +
          std::to_string(es.values[k]) + ")");
    }
    root[k] = es.values[k] <= dust ? 0.0 : std::sqrt(es.values[k]);
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cxd sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        sum += es.vectors(i, k) * root[k] * std::conj(es.vectors(j, k));
      }
      if (i == j) {
        out(i, i) = sum.real();
      } else {
        out(i, j) = sum;
        out(j, i) = std::conj(sum);
      }
    }
  }
  return out;
}

inline bool is_psd(const ComplexMatrix& m, double tol = 1e-10) {
  if (!is_hermitian(m, tol)) return false;
  const auto values = hermitian_eigenvalues(m, tol);
  return values.back() >= -tol;
}

// Trace norm ||x||_1 = sum of singular values.  Hermitian inputs take the
// direct route through their eigenvalues, which is exact to rounding; the
// general path goes through the Gram matrix x x^dag, whose square root
// amplifies rounding near zero singular values, so prefer Hermitian
// arguments where the caller has them.
inline double trace_norm(const ComplexMatrix& x) {
  if (!x.square()) {
    throw std::invalid_argument("trace_norm: matrix must be square");
  }
  if (is_hermitian(x, 1e-10)) {
    double sum = 0.0;
    for (double v : hermitian_eigenvalues(x)) sum += std::abs(v);
    return sum;
  }
  const std::vector<double> gram = hermitian_eigenvalues(x * adjoint(x));
  const double dust = kSpectralDustTol * std::max(0.0, gram.front());
  double sum = 0.0;
  for (double v : gram) {
    if (v > dust) sum += std::sqrt(v);
  }
  return sum;
}

inline std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m) {
  os << m.rows() << "x" << m.cols() << " [";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "" : "; ");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const cxd z = m(i, j);
      os << (j == 0 ? "" : ", ") << z.real() << (z.imag() < 0 ? "-" : "+")
         << std::abs(z.imag()) << "i";
    }
  }
  return os << "]";
}

}  // namespace cohflow
