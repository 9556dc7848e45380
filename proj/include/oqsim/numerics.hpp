// numerics.hpp - dense complex linear algebra kernel (Eigen-backed).
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Error type for numeric and state-validation failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Error type for configuration problems (bad keys, out-of-range parameters).
struct ConfigError : Error {
  using Error::Error;
};

// absolute tolerance on the max anti-Hermitian component accepted by eigh
inline constexpr double kHermitianTol = 1e-10;
// default eigenvalue clamp applied before taking logs
inline constexpr double kLogFloor = 1e-300;

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

// Pauli matrices in the basis order {|e>, |g>} (index 0 = excited).
inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Lowering operator |g><e|.
inline ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

/// Raising operator |e><g|.
inline ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

/// Largest |entry| of the anti-Hermitian part (M - M^dag)/2.
inline double max_anti_hermitian(const ComplexMatrix& m) {
  return (0.5 * (m - m.adjoint())).cwiseAbs().maxCoeff();
}

/// Kronecker (tensor) product.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Partial trace of a square matrix over the subsystems NOT listed in `keep`.
/// `dims` are the subsystem dimensions (their product must equal the matrix
/// dimension); `keep` is a set of subsystem indices, result ordered by
/// ascending subsystem index.
inline ComplexMatrix partial_trace(const ComplexMatrix& m,
                                   const std::vector<Eigen::Index>& dims,
                                   std::vector<std::size_t> keep) {
  Eigen::Index total = 1;
  for (auto d : dims) {
    if (d <= 0) throw Error("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total)
    throw Error("partial_trace: product of dims does not match matrix dimension");
  if (keep.empty()) throw Error("partial_trace: keep set must be nonempty");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw Error("partial_trace: duplicate subsystem index in keep set");
  if (keep.back() >= dims.size()) throw Error("partial_trace: keep index out of range");

  const std::size_t n = dims.size();
  std::vector<Eigen::Index> stride(n, 1);
  for (std::size_t k = n - 1; k-- > 0;) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < n; ++k)
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);

  // flat offsets of every multi-index over a subsystem subset
  auto offsets = [&](const std::vector<std::size_t>& subs) {
    Eigen::Index count = 1;
    for (auto s : subs) count *= dims[s];
    std::vector<Eigen::Index> off(static_cast<std::size_t>(count), 0);
    for (Eigen::Index x = 0; x < count; ++x) {
      Eigen::Index rem = x;
      for (std::size_t q = subs.size(); q-- > 0;) {
        off[static_cast<std::size_t>(x)] += (rem % dims[subs[q]]) * stride[subs[q]];
        rem /= dims[subs[q]];
      }
    }
    return off;
  };
  const auto koff = offsets(keep);
  const auto toff = offsets(traced);

  ComplexMatrix out(static_cast<Eigen::Index>(koff.size()), static_cast<Eigen::Index>(koff.size()));
  for (std::size_t i = 0; i < koff.size(); ++i)
    for (std::size_t j = 0; j < koff.size(); ++j) {
      Complex acc = 0;
      for (std::size_t t = 0; t < toff.size(); ++t) acc += m(koff[i] + toff[t], koff[j] + toff[t]);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  return out;
}

struct HermitianEigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, same order
};

/// Hermitian eigendecomposition. Inputs within the anti-Hermitian tolerance
/// are symmetrized first; anything beyond it is rejected.
inline HermitianEigenDecomposition eigh(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw Error("eigh: matrix must be square");
  if (max_anti_hermitian(h) > kHermitianTol)
    throw Error("eigh: input is not Hermitian within 1e-10");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success) throw Error("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Unitary exp(-i h t) of a Hermitian generator, via eigh.
inline ComplexMatrix expm_generator(const ComplexMatrix& h, double t) {
  const auto ed = eigh(h);
  Eigen::VectorXcd phases(ed.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(Complex(0, -ed.eigenvalues[i] * t));
  return ed.eigenvectors * phases.asDiagonal() * ed.eigenvectors.adjoint();
}

/// Matrix log of a positive-semidefinite Hermitian matrix; eigenvalues are
/// clamped at `floor` before the log. Rejects eigenvalues below -1e-10.
inline ComplexMatrix logm_psd(const ComplexMatrix& m, double floor = kLogFloor) {
  const auto ed = eigh(m);
  if (ed.eigenvalues.minCoeff() < -kHermitianTol)
    throw Error("logm_psd: eigenvalue below -1e-10, input not positive semidefinite");
  Eigen::VectorXcd logs(ed.eigenvalues.size());
  for (Eigen::Index i = 0; i < logs.size(); ++i)
    logs[i] = std::log(std::max(ed.eigenvalues[i], floor));
  return ed.eigenvectors * logs.asDiagonal() * ed.eigenvectors.adjoint();
}

/// Trace distance (1/2)||a - b||_1 for Hermitian a, b.
inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto ed = eigh(a - b);
  return 0.5 * ed.eigenvalues.cwiseAbs().sum();
}

/// Exact unitary propagation rho(t) = e^{-iHt} rho0 e^{iHt} from one
/// diagonalization of H, reused across sample times.
class SpectralPropagator {
 public:
  SpectralPropagator(const ComplexMatrix& h, const ComplexMatrix& rho0)
      : ed_(eigh(h)), rho0_eig_(ed_.eigenvectors.adjoint() * rho0 * ed_.eigenvectors) {}

  ComplexMatrix state_at(double t) const {
    Eigen::VectorXcd ph(ed_.eigenvalues.size());
    for (Eigen::Index i = 0; i < ph.size(); ++i)
      ph[i] = std::exp(Complex(0, -ed_.eigenvalues[i] * t));
    ComplexMatrix rotated = (ph * ph.adjoint()).cwiseProduct(rho0_eig_);
    ComplexMatrix out = ed_.eigenvectors * rotated * ed_.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint());  // scrub roundoff drift
  }

  const HermitianEigenDecomposition& decomposition() const { return ed_; }

 private:
  HermitianEigenDecomposition ed_;
  ComplexMatrix rho0_eig_;
};

}  // namespace oqsim
