// quantifiers.hpp - nonclassical volume, entropies, entropy production, ergotropy.
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "oqsim/numerics.hpp"
#include "oqsim/record.hpp"
#include "oqsim/states.hpp"

namespace oqsim {

// relative-entropy support rule: total reference-kernel weight above this is
// treated as a genuine support violation (result +infinity)
inline constexpr double kSupportTol = 1e-12;
// reference states with an eigenvalue this small are rejected as rank
// deficient where a full-rank fixed point is required
inline constexpr double kRankTol = 1e-14;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadratureSpec {
  int n_theta = 64;  // polar nodes (Gauss-Legendre in cos(theta))
  int n_phi = 128;   // azimuthal nodes (uniform)
};

struct GaussLegendre {
  std::vector<double> nodes;    // ascending on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw Error("gauss_legendre: need at least one node");
  GaussLegendre out;
  out.nodes.resize(static_cast<std::size_t>(n));
  out.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    out.nodes[static_cast<std::size_t>(i)] = -x;
    out.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out.weights[static_cast<std::size_t>(i)] = w;
    out.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return out;
}

/// Spin-1/2 phase-space kernel (I + sqrt(3) n . sigma) / (4 pi).
inline ComplexMatrix wigner_kernel(double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  const double s3 = std::sqrt(3.0);
  ComplexMatrix m = identity(2) + s3 * (nx * pauli_x() + ny * pauli_y() + nz * pauli_z());
  return m / (4.0 * std::numbers::pi);
}

/// Spherical quasiprobability W(theta, phi) = Tr[rho Delta(theta, phi)].
inline double wigner_function(const DensityMatrix& rho, double theta, double phi) {
  if (rho.dim() != 2) throw Error("wigner_function: expected a single-qubit state");
  return (rho.mat * wigner_kernel(theta, phi)).trace().real();
}

/// Closed form of the nonclassical volume for Bloch radius r in [0, 1]:
/// zero up to r = 1/sqrt(3), then (a + 1/a)/2 - 1 with a = sqrt(3) r.
inline double closed_form_delta(double r) {
  if (r < -1e-12 || r > 1.0 + 1e-9) throw Error("closed_form_delta: radius outside [0, 1]");
  const double a = std::sqrt(3.0) * std::clamp(r, 0.0, 1.0);
  if (a <= 1.0) return 0.0;
  return 0.5 * (a + 1.0 / a) - 1.0;
}

/// Nonclassical volume delta = integral |W| dOmega - 1 by quadrature.
///
/// The polar nodes live in the state's principal frame (third axis along the
/// Bloch vector) and the polar interval is split at the zero circle of W when
/// one exists, so the piecewise-smooth |W| is integrated panel by panel.
inline double nonclassical_volume(const DensityMatrix& rho, const QuadratureSpec& q = {}) {
  if (q.n_theta < 8) throw Error("nonclassical_volume: n_theta must be at least 8");
  if (q.n_phi < 16) throw Error("nonclassical_volume: n_phi must be at least 16");
  const BlochVector b = to_bloch(rho);
  const double rn = b.norm();

  double e3[3] = {0, 0, 1};
  if (rn > 1e-14) {
    e3[0] = b.x / rn;
    e3[1] = b.y / rn;
    e3[2] = b.z / rn;
  }
  double seed[3] = {1, 0, 0};
  if (std::abs(e3[0]) > 0.9) {
    seed[0] = 0;
    seed[1] = 1;
  }
  const double proj = seed[0] * e3[0] + seed[1] * e3[1] + seed[2] * e3[2];
  double e1[3] = {seed[0] - proj * e3[0], seed[1] - proj * e3[1], seed[2] - proj * e3[2]};
  const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (auto& c : e1) c /= n1;
  const double e2[3] = {e3[1] * e1[2] - e3[2] * e1[1], e3[2] * e1[0] - e3[0] * e1[2],
                        e3[0] * e1[1] - e3[1] * e1[0]};

  const double a = std::sqrt(3.0) * rn;
  std::vector<std::pair<double, double>> panels;
  if (a > 1.0) {
    const double u0 = -1.0 / a;  // W changes sign on the circle n . e3 = u0
    panels = {{-1.0, u0}, {u0, 1.0}};
  } else {
    panels = {{-1.0, 1.0}};
  }

  const double dphi = 2.0 * std::numbers::pi / q.n_phi;
  double integral = 0;
  for (std::size_t p = 0; p < panels.size(); ++p) {
    int np = q.n_theta;
    if (panels.size() == 2) np = (p == 0) ? q.n_theta / 2 : q.n_theta - q.n_theta / 2;
    const GaussLegendre gl = gauss_legendre(np);
    const double mid = 0.5 * (panels[p].first + panels[p].second);
    const double half = 0.5 * (panels[p].second - panels[p].first);
    for (int i = 0; i < np; ++i) {
      const double u = mid + half * gl.nodes[static_cast<std::size_t>(i)];
      const double wu = half * gl.weights[static_cast<std::size_t>(i)];
      const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
      for (int j = 0; j < q.n_phi; ++j) {
        const double cp = std::cos(j * dphi);
        const double sp = std::sin(j * dphi);
        const double n[3] = {cp * su * e1[0] + sp * su * e2[0] + u * e3[0],
                             cp * su * e1[1] + sp * su * e2[1] + u * e3[1],
                             cp * su * e1[2] + sp * su * e2[2] + u * e3[2]};
        const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
        const double phi = std::atan2(n[1], n[0]);
        integral += wu * dphi * std::abs(wigner_function(rho, theta, phi));
      }
    }
  }
  return std::max(integral - 1.0, 0.0);
}

/// Von Neumann entropy -Tr[rho ln rho] with the 0 ln 0 = 0 convention.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  const auto ed = eigh(rho.mat);
  double s = 0;
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
    const double lam = ed.eigenvalues[i];
    if (lam > 0) s -= lam * std::log(lam);
  }
  return s;
}

/// Relative entropy S(rho || sigma) = Tr[rho ln rho] - Tr[rho ln sigma].
/// Returns +infinity when rho places more than `support_tol` weight on the
/// kernel of sigma; only exact (sub-1e-300) zeros count as kernel directions.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                               double support_tol = kSupportTol) {
  if (rho.dim() != sigma.dim()) throw Error("relative_entropy: dimension mismatch");
  const auto ed_r = eigh(rho.mat);
  double tr_r_ln_r = 0;
  for (Eigen::Index i = 0; i < ed_r.eigenvalues.size(); ++i) {
    const double lam = ed_r.eigenvalues[i];
    if (lam > 0) tr_r_ln_r += lam * std::log(lam);
  }
  const auto ed_s = eigh(sigma.mat);
  const ComplexMatrix t = ed_s.eigenvectors.adjoint() * rho.mat * ed_s.eigenvectors;
  double kernel_weight = 0;
  double cross = 0;
  for (Eigen::Index k = 0; k < ed_s.eigenvalues.size(); ++k) {
    const double p = ed_s.eigenvalues[k];
    const double w = t(k, k).real();
    if (p <= kLogFloor)
      kernel_weight += std::max(w, 0.0);
    else
      cross += w * std::log(p);
  }
  if (kernel_weight > support_tol) return kInf;
  return tr_r_ln_r - cross;
}

/// Mutual information across the cut after `split` leading subsystems.
inline double mutual_information(const DensityMatrix& rho, std::size_t split = 1) {
  const std::size_t n = rho.subsystem_dims.size();
  if (n < 2) throw Error("mutual_information: need at least two subsystems");
  if (split < 1 || split >= n) throw Error("mutual_information: split index out of range");
  std::vector<std::size_t> left, right;
  for (std::size_t k = 0; k < split; ++k) left.push_back(k);
  for (std::size_t k = split; k < n; ++k) right.push_back(k);
  return von_neumann_entropy(reduced(rho, left)) + von_neumann_entropy(reduced(rho, right)) -
         von_neumann_entropy(rho);
}

/// Entropy production of a joint system-environment state relative to the
/// fresh environment reference, with its information-theoretic split.
struct EntropyProduction {
  double value = 0;                 // S(rho_SE || rho_S x rho_E_ref)
  double mutual_information = 0;    // correlations built up with the environment
  double env_relative_entropy = 0;  // displacement of the environment marginal
};

/// Computes the contracted form S(rho_S') - S(rho_SE') - Tr[rho_E' ln rho_E_ref]
/// and the decomposition I(S:E) + S(rho_E' || rho_E_ref), and insists the two
/// routes agree within 1e-8 when finite. The reference is expanded in its own
/// eigenbasis so that exponentially small thermal weights survive intact.
inline EntropyProduction entropy_production_joint(const DensityMatrix& joint,
                                                  const DensityMatrix& env_ref,
                                                  std::size_t split = 1) {
  const std::size_t n = joint.subsystem_dims.size();
  if (n < 2) throw Error("entropy_production_joint: need at least two subsystems");
  if (split < 1 || split >= n) throw Error("entropy_production_joint: split index out of range");
  std::vector<std::size_t> sys, env;
  for (std::size_t k = 0; k < split; ++k) sys.push_back(k);
  for (std::size_t k = split; k < n; ++k) env.push_back(k);
  Eigen::Index d_env = 1;
  for (auto k : env) d_env *= joint.subsystem_dims[k];
  if (env_ref.dim() != d_env)
    throw Error("entropy_production_joint: environment reference dimension mismatch");

  const DensityMatrix rho_s = reduced(joint, sys);
  const DensityMatrix rho_e = reduced(joint, env);
  const double s_joint = von_neumann_entropy(joint);
  const double s_sys = von_neumann_entropy(rho_s);
  const double s_env = von_neumann_entropy(rho_e);

  EntropyProduction out;
  out.mutual_information = s_sys + s_env - s_joint;
  out.env_relative_entropy = relative_entropy(rho_e, env_ref);
  if (std::isinf(out.env_relative_entropy)) {
    out.value = kInf;
    return out;
  }

  const auto ed_ref = eigh(env_ref.mat);
  const ComplexMatrix t = ed_ref.eigenvectors.adjoint() * rho_e.mat * ed_ref.eigenvectors;
  double cross = 0;
  for (Eigen::Index k = 0; k < ed_ref.eigenvalues.size(); ++k)
    if (ed_ref.eigenvalues[k] > kLogFloor)
      cross += t(k, k).real() * std::log(ed_ref.eigenvalues[k]);
  out.value = s_sys - s_joint - cross;

  const double decomposed = out.mutual_information + out.env_relative_entropy;
  if (std::abs(out.value - decomposed) > 1e-8)
    throw Error("entropy_production_joint: contracted and decomposed routes disagree beyond 1e-8");
  return out;
}

/// Entropy production along a map with full-rank fixed point rho_star:
/// S(rho_init || rho_star) - S(rho_evolved || rho_star).
inline double entropy_production_fixed_point(const DensityMatrix& rho_init,
                                             const DensityMatrix& rho_evolved,
                                             const DensityMatrix& rho_star) {
  if (rho_init.dim() != rho_star.dim() || rho_evolved.dim() != rho_star.dim())
    throw Error("entropy_production_fixed_point: dimension mismatch");
  const auto ed = eigh(rho_star.mat);
  if (ed.eigenvalues.minCoeff() < kRankTol)
    throw Error(
        "entropy_production_fixed_point: reference state is rank deficient; "
        "regularize it (mix in a small full-rank component) before use");
  return relative_entropy(rho_init, rho_star) - relative_entropy(rho_evolved, rho_star);
}

/// Passive counterpart of rho for Hamiltonian h: populations sorted in
/// descending order placed on the ascending-energy eigenbasis of h. Ties in
/// the populations keep their ascending-eigenvalue order.
inline DensityMatrix passive_state(const DensityMatrix& rho, const ComplexMatrix& h) {
  if (rho.dim() != h.rows()) throw Error("passive_state: dimension mismatch");
  const auto ed_h = eigh(h);
  const auto ed_r = eigh(rho.mat);
  const Eigen::Index d = rho.dim();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index u, Eigen::Index v) {
    return ed_r.eigenvalues[u] > ed_r.eigenvalues[v];
  });
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    m += ed_r.eigenvalues[idx[static_cast<std::size_t>(k)]] *
         (ed_h.eigenvectors.col(k) * ed_h.eigenvectors.col(k).adjoint());
  return {std::move(m), rho.subsystem_dims};
}

/// Maximum unitarily extractable work Tr[rho h] - Tr[passive(rho, h) h].
inline double ergotropy_general(const DensityMatrix& rho, const ComplexMatrix& h) {
  if (rho.dim() != h.rows()) throw Error("ergotropy_general: dimension mismatch");
  const auto ed_h = eigh(h);
  const auto ed_r = eigh(rho.mat);
  const Eigen::Index d = rho.dim();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index u, Eigen::Index v) {
    return ed_r.eigenvalues[u] > ed_r.eigenvalues[v];
  });
  double e_passive = 0;
  for (Eigen::Index k = 0; k < d; ++k)
    e_passive += ed_r.eigenvalues[idx[static_cast<std::size_t>(k)]] * ed_h.eigenvalues[k];
  return (rho.mat * h).trace().real() - e_passive;
}

/// Qubit closed form for h = (omega0/2) sigma_z: (omega0/2)(r_z + |r|).
inline double ergotropy_qubit(const BlochVector& b, double omega0) {
  return 0.5 * omega0 * (b.z + b.norm());
}

/// Evaluates all four quantifiers on a reduced qubit state.
inline QuantifierRecord make_record(double abscissa, const DensityMatrix& rho_s, double sigma,
                                    double omega0, const QuadratureSpec& q = {}) {
  QuantifierRecord rec;
  rec.abscissa = abscissa;
  rec.delta = nonclassical_volume(rho_s, q);
  rec.entropy = von_neumann_entropy(rho_s);
  rec.sigma = sigma;
  rec.ergotropy = ergotropy_qubit(to_bloch(rho_s), omega0);
  return rec;
}

}  // namespace oqsim
