// states.hpp - density matrices, Bloch vectors, thermal and collective-spin states.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "oqsim/numerics.hpp"

namespace oqsim {

struct BlochVector {
  double x = 0;
  double y = 0;
  double z = 0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Initial Bloch vector shared by all bundled parameter sets.
inline BlochVector default_initial_bloch() { return {0.50, 0.56, -0.66}; }

/// Density matrix together with its tensor-factor dimensions. Basis order for
/// each qubit factor is {|e>, |g>}: entry (0,0) is the excited population.
struct DensityMatrix {
  ComplexMatrix mat;
  std::vector<Eigen::Index> subsystem_dims;

  Eigen::Index dim() const { return mat.rows(); }
};

/// Checks Hermiticity, unit trace, positivity (within 1e-10) and that the
/// subsystem dimensions multiply to the matrix dimension.
inline void validate(const DensityMatrix& rho) {
  Eigen::Index total = 1;
  for (auto d : rho.subsystem_dims) total *= d;
  if (rho.mat.rows() != rho.mat.cols() || total != rho.mat.rows())
    throw Error("density matrix: subsystem dims do not multiply to matrix dimension");
  if (max_anti_hermitian(rho.mat) > kHermitianTol)
    throw Error("density matrix: not Hermitian within 1e-10");
  if (std::abs(rho.mat.trace().real() - 1.0) > kHermitianTol ||
      std::abs(rho.mat.trace().imag()) > kHermitianTol)
    throw Error("density matrix: trace differs from 1 by more than 1e-10");
  const auto ed = eigh(rho.mat);
  if (ed.eigenvalues.minCoeff() < -kHermitianTol)
    throw Error("density matrix: eigenvalue below -1e-10, not positive semidefinite");
}

/// Qubit state rho = (I + r . sigma)/2 from a Bloch vector with |r| <= 1.
inline DensityMatrix from_bloch(const BlochVector& b) {
  if (b.norm() > 1.0 + 1e-9) throw Error("from_bloch: Bloch vector norm exceeds 1");
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + b.z);
  m(1, 1) = 0.5 * (1.0 - b.z);
  m(0, 1) = 0.5 * Complex(b.x, -b.y);
  m(1, 0) = 0.5 * Complex(b.x, b.y);
  return {std::move(m), {2}};
}

inline BlochVector to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error("to_bloch: expected a single-qubit state");
  BlochVector b;
  b.x = 2.0 * rho.mat(1, 0).real();
  b.y = 2.0 * rho.mat(1, 0).imag();
  b.z = rho.mat(0, 0).real() - rho.mat(1, 1).real();
  return b;
}

/// Reduced state over the kept subsystems (ascending subsystem order).
inline DensityMatrix reduced(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  ComplexMatrix m = partial_trace(rho.mat, rho.subsystem_dims, sorted);
  std::vector<Eigen::Index> dims;
  for (auto k : sorted) dims.push_back(rho.subsystem_dims[k]);
  return {std::move(m), std::move(dims)};
}

/// Thermal qubit for H = (omega/2) sigma_z: populations exp(-beta omega)/Z on
/// |e> and 1/Z on |g>. Safe for large beta*omega (saturates at |g><g|).
inline DensityMatrix thermal_qubit(double beta, double omega) {
  const double q = std::exp(-beta * omega);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = q / (1.0 + q);
  m(1, 1) = 1.0 / (1.0 + q);
  return {std::move(m), {2}};
}

/// Gibbs state exp(-beta H)/Z for a Hermitian H, computed spectrally with the
/// exponent shifted so the largest weight is exp(0).
inline DensityMatrix gibbs_state(const ComplexMatrix& h, double beta,
                                 std::vector<Eigen::Index> dims = {}) {
  const auto ed = eigh(h);
  const double shift = -beta * ed.eigenvalues.minCoeff();
  RealVector w(ed.eigenvalues.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    w[i] = std::exp(-beta * ed.eigenvalues[i] - shift);
  w /= w.sum();
  ComplexMatrix m = ed.eigenvectors * w.cast<Complex>().asDiagonal() * ed.eigenvectors.adjoint();
  if (dims.empty()) dims = {h.rows()};
  return {std::move(m), std::move(dims)};
}

/// Collective spin-j operators for n spin-1/2 particles (j = n/2) in the Dicke
/// basis ordered by descending magnetization m = j, j-1, ..., -j.
struct CollectiveSpinOps {
  int n_spins = 0;
  ComplexMatrix jx, jy, jz;
};

inline CollectiveSpinOps dicke_operators(int n_spins) {
  if (n_spins < 1) throw Error("dicke_operators: need at least one spin");
  const Eigen::Index d = n_spins + 1;
  const double j = 0.5 * n_spins;
  ComplexMatrix jz = ComplexMatrix::Zero(d, d);
  ComplexMatrix jp = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = j - static_cast<double>(k);
    jz(k, k) = m;
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  ComplexMatrix jm = jp.adjoint();
  CollectiveSpinOps ops;
  ops.n_spins = n_spins;
  ops.jx = 0.5 * (jp + jm);
  ops.jy = Complex(0, -0.5) * (jp - jm);
  ops.jz = std::move(jz);
  return ops;
}

/// Bosonic ladder operators on the truncated Fock space {|0>, ..., |n_max>}.
struct FockSpace {
  int n_max = 0;
  ComplexMatrix annihilate, create;

  ComplexMatrix number() const { return create * annihilate; }
};

inline FockSpace fock_space(int n_max) {
  if (n_max < 1) throw Error("fock_space: n_max must be at least 1");
  const Eigen::Index d = n_max + 1;
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  FockSpace fs;
  fs.n_max = n_max;
  fs.create = a.adjoint();
  fs.annihilate = std::move(a);
  return fs;
}

/// Truncated thermal oscillator state with the weight lost to truncation.
struct ThermalFockState {
  DensityMatrix state;
  double tail_weight = 0;  // probability beyond n_max in the untruncated state
};

inline ThermalFockState thermal_fock(double beta, double omega_c, int n_max) {
  if (n_max < 1) throw Error("thermal_fock: n_max must be at least 1");
  if (beta <= 0 || omega_c <= 0) throw Error("thermal_fock: beta and omega_c must be positive");
  const Eigen::Index d = n_max + 1;
  const double q = std::exp(-beta * omega_c);
  RealVector w(d);
  for (Eigen::Index n = 0; n < d; ++n) w[n] = std::pow(q, static_cast<double>(n));
  w /= w.sum();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) m(n, n) = w[n];
  return {{std::move(m), {d}}, std::pow(q, static_cast<double>(n_max + 1))};
}

/// Oscillator vacuum |0><0| on the truncated Fock space.
inline DensityMatrix fock_vacuum(int n_max) {
  if (n_max < 1) throw Error("fock_vacuum: n_max must be at least 1");
  const Eigen::Index d = n_max + 1;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(0, 0) = 1;
  return {std::move(m), {d}};
}

}  // namespace oqsim
