// spin_spin.hpp - collision-chain and central-spin engines (qubit environments).
#pragma once

#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "oqsim/numerics.hpp"
#include "oqsim/quantifiers.hpp"
#include "oqsim/record.hpp"
#include "oqsim/states.hpp"

namespace oqsim {

// ---------------------------------------------------------------------------
// collision chain: the system collides with a stream of thermal ancillas, and
// consecutive ancillas partial-swap before being handed to the system, which
// carries memory down the chain when theta > 0.

struct CollisionConfig {
  double omega_s = 1.5;  // system splitting
  double omega_r = 1.0;  // ancilla splitting
  double beta = 50.0;    // ancilla inverse temperature
  double g_sr = 0.5;     // exchange coupling during a collision
  double tau = 0.5;      // collision duration
  double theta = 0.98 * std::numbers::pi / 2;  // inter-ancilla partial-swap angle
  int n_collisions = 100;
  BlochVector initial_state = default_initial_bloch();
};

inline void validate_config(const CollisionConfig& cfg) {
  if (!(cfg.tau > 0)) throw ConfigError("collision: tau must be positive");
  if (!(cfg.theta >= 0 && cfg.theta <= std::numbers::pi / 2 + 1e-12))
    throw ConfigError("collision: theta out of range [0, pi/2]");
  if (cfg.n_collisions < 1) throw ConfigError("collision: n_collisions must be at least 1");
  if (!(cfg.beta >= 0)) throw ConfigError("collision: beta must be nonnegative");
  if (cfg.initial_state.norm() > 1.0 + 1e-9)
    throw ConfigError("collision: initial Bloch vector norm exceeds 1");
}

/// Two-qubit collision Hamiltonian: local splittings plus an exchange term.
inline ComplexMatrix collision_hamiltonian(const CollisionConfig& cfg) {
  const ComplexMatrix i2 = identity(2);
  return 0.5 * cfg.omega_s * kron(pauli_z(), i2) + 0.5 * cfg.omega_r * kron(i2, pauli_z()) +
         cfg.g_sr * (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()));
}

inline ComplexMatrix collision_unitary(const CollisionConfig& cfg) {
  return expm_generator(collision_hamiltonian(cfg), cfg.tau);
}

/// Partial swap cos(theta) I - i sin(theta) SWAP on two qubits.
inline ComplexMatrix partial_swap_unitary(double theta) {
  if (!(theta >= 0 && theta <= std::numbers::pi / 2 + 1e-12))
    throw ConfigError("partial_swap_unitary: theta out of range [0, pi/2]");
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1;
  swap(1, 2) = swap(2, 1) = 1;
  return std::cos(theta) * identity(4) - Complex(0, 1) * std::sin(theta) * swap;
}

namespace detail {

// Runs the chain, calling visit(n, joint) with the post-collision joint state
// of (system, current ancilla) for n = 1..n_collisions.
template <class Visitor>
inline void collision_sweep(const CollisionConfig& cfg, Visitor&& visit) {
  validate_config(cfg);
  const ComplexMatrix u_c = collision_unitary(cfg);
  const DensityMatrix rho_th = thermal_qubit(cfg.beta, cfg.omega_r);
  const ComplexMatrix swap_next = kron(identity(2), partial_swap_unitary(cfg.theta));
  ComplexMatrix joint = kron(from_bloch(cfg.initial_state).mat, rho_th.mat);
  for (int n = 1; n <= cfg.n_collisions; ++n) {
    joint = u_c * joint * u_c.adjoint();
    joint = 0.5 * (joint + joint.adjoint());
    visit(n, joint);
    if (n < cfg.n_collisions) {
      // hand correlations to the incoming ancilla, then drop the used one
      ComplexMatrix wide = kron(joint, rho_th.mat);
      wide = swap_next * wide * swap_next.adjoint();
      joint = partial_trace(wide, {2, 2, 2}, {0, 2});
    }
  }
}

}  // namespace detail

/// Full chain run: one record per collision (abscissa = collision number),
/// entropy production per collision against the fresh thermal reference.
inline RunOutput run_collision(const CollisionConfig& cfg, const QuadratureSpec& q = {}) {
  RunOutput out;
  const DensityMatrix rho_th = thermal_qubit(cfg.beta, cfg.omega_r);
  detail::collision_sweep(cfg, [&](int n, const ComplexMatrix& joint) {
    const DensityMatrix j{joint, {2, 2}};
    const DensityMatrix rho_s = reduced(j, {0});
    validate(rho_s);
    const EntropyProduction ep = entropy_production_joint(j, rho_th);
    out.records.push_back(make_record(static_cast<double>(n), rho_s, ep.value, cfg.omega_s, q));
  });
  out.metadata = {{"version", kVersion},
                  {"model", "collision"},
                  {"omega_s", format_double(cfg.omega_s)},
                  {"omega_r", format_double(cfg.omega_r)},
                  {"beta", format_double(cfg.beta)},
                  {"g_sr", format_double(cfg.g_sr)},
                  {"tau", format_double(cfg.tau)},
                  {"theta", format_double(cfg.theta)},
                  {"n_collisions", std::to_string(cfg.n_collisions)},
                  {"initial_x", format_double(cfg.initial_state.x)},
                  {"initial_y", format_double(cfg.initial_state.y)},
                  {"initial_z", format_double(cfg.initial_state.z)},
                  {"quadrature", std::to_string(q.n_theta) + "x" + std::to_string(q.n_phi)},
                  {"abscissa_label", "collision number"}};
  return out;
}

/// Reduced system states along the chain: entry 0 is the initial state,
/// entry n the state after collision n.
inline std::vector<DensityMatrix> collision_reduced_states(const CollisionConfig& cfg) {
  std::vector<DensityMatrix> states;
  states.push_back(from_bloch(cfg.initial_state));
  detail::collision_sweep(cfg, [&](int, const ComplexMatrix& joint) {
    states.push_back(reduced({joint, {2, 2}}, {0}));
  });
  return states;
}

/// Superoperator (column-stacked, 4x4) of the single-collision map
/// rho -> Tr_A[U (rho x rho_th) U^dag] with a fresh thermal ancilla.
/// Iterating it reproduces the chain only for theta = 0, where ancillas
/// carry no memory between collisions.
inline ComplexMatrix collision_map_superoperator(const CollisionConfig& cfg) {
  validate_config(cfg);
  const ComplexMatrix u_c = collision_unitary(cfg);
  const DensityMatrix rho_th = thermal_qubit(cfg.beta, cfg.omega_r);
  ComplexMatrix m(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(i, j) = 1;
      const ComplexMatrix mapped =
          partial_trace(u_c * kron(e, rho_th.mat) * u_c.adjoint(), {2, 2}, {0});
      for (Eigen::Index r = 0; r < 2; ++r)
        for (Eigen::Index c = 0; c < 2; ++c) m(r + 2 * c, i + 2 * j) = mapped(r, c);
    }
  return m;
}

/// Stationary state of the single-collision map: the eigenvector of the
/// superoperator with eigenvalue closest to 1, hermitized and normalized.
inline DensityMatrix collision_fixed_point(const CollisionConfig& cfg) {
  const ComplexMatrix m = collision_map_superoperator(cfg);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error("collision_fixed_point: eigensolver did not converge");
  Eigen::Index best = 0;
  double best_dist = std::abs(solver.eigenvalues()[0] - Complex(1, 0));
  for (Eigen::Index k = 1; k < solver.eigenvalues().size(); ++k) {
    const double dist = std::abs(solver.eigenvalues()[k] - Complex(1, 0));
    if (dist < best_dist) {
      best = k;
      best_dist = dist;
    }
  }
  const auto v = solver.eigenvectors().col(best);
  ComplexMatrix x(2, 2);
  for (Eigen::Index r = 0; r < 2; ++r)
    for (Eigen::Index c = 0; c < 2; ++c) x(r, c) = v[r + 2 * c];
  x = 0.5 * (x + x.adjoint());
  const double tr = x.trace().real();
  if (std::abs(tr) < 1e-12) throw Error("collision_fixed_point: fixed point has zero trace");
  DensityMatrix rho{x / tr, {2}};
  validate(rho);
  return rho;
}

// ---------------------------------------------------------------------------
// central spin: one qubit coupled collectively to a bath of n_bath spins in a
// shared thermal state, evolved exactly in the joint Dicke space.

struct CentralSpinConfig {
  double omega0 = 1.5;  // central qubit splitting
  double omega = 1.0;   // total bath splitting (per spin: omega/n_bath)
  double beta = 100.0;  // bath inverse temperature
  double epsilon = 0.5; // collective coupling, applied as epsilon/sqrt(n_bath)
  int n_bath = 50;
  std::vector<double> t_grid = uniform_grid(0.0, 20.0, 400);
  BlochVector initial_state = default_initial_bloch();
};

inline void validate_config(const CentralSpinConfig& cfg) {
  if (cfg.n_bath < 1) throw ConfigError("central-spin: n_bath must be at least 1");
  if (!(cfg.beta >= 0)) throw ConfigError("central-spin: beta must be nonnegative");
  check_time_grid(cfg.t_grid, "central-spin");
  if (cfg.initial_state.norm() > 1.0 + 1e-9)
    throw ConfigError("central-spin: initial Bloch vector norm exceeds 1");
}

inline ComplexMatrix central_spin_bath_hamiltonian(const CentralSpinConfig& cfg) {
  return (cfg.omega / cfg.n_bath) * dicke_operators(cfg.n_bath).jz;
}

/// Joint Hamiltonian on the 2 (n_bath + 1) dimensional space: local terms plus
/// the collective transverse coupling (epsilon/sqrt(n_bath)) (sx Jx + sy Jy).
inline ComplexMatrix central_spin_hamiltonian(const CentralSpinConfig& cfg) {
  const CollectiveSpinOps ops = dicke_operators(cfg.n_bath);
  const Eigen::Index db = cfg.n_bath + 1;
  const double gc = cfg.epsilon / std::sqrt(static_cast<double>(cfg.n_bath));
  return 0.5 * cfg.omega0 * kron(pauli_z(), identity(db)) +
         kron(identity(2), (cfg.omega / cfg.n_bath) * ops.jz) +
         gc * (kron(pauli_x(), ops.jx) + kron(pauli_y(), ops.jy));
}

inline RunOutput run_central_spin(const CentralSpinConfig& cfg, const QuadratureSpec& q = {}) {
  validate_config(cfg);
  const Eigen::Index db = cfg.n_bath + 1;
  const DensityMatrix rho_b = gibbs_state(central_spin_bath_hamiltonian(cfg), cfg.beta);
  const ComplexMatrix joint0 = kron(from_bloch(cfg.initial_state).mat, rho_b.mat);
  const SpectralPropagator prop(central_spin_hamiltonian(cfg), joint0);

  RunOutput out;
  for (double t : cfg.t_grid) {
    const DensityMatrix j{prop.state_at(t), {2, db}};
    const DensityMatrix rho_s = reduced(j, {0});
    validate(rho_s);
    const EntropyProduction ep = entropy_production_joint(j, rho_b);
    out.records.push_back(make_record(t, rho_s, ep.value, cfg.omega0, q));
  }
  out.metadata = {{"version", kVersion},
                  {"model", "central-spin"},
                  {"omega0", format_double(cfg.omega0)},
                  {"omega", format_double(cfg.omega)},
                  {"beta", format_double(cfg.beta)},
                  {"epsilon", format_double(cfg.epsilon)},
                  {"n_bath", std::to_string(cfg.n_bath)},
                  {"t_max", format_double(cfg.t_grid.back())},
                  {"n_samples", std::to_string(cfg.t_grid.size())},
                  {"initial_x", format_double(cfg.initial_state.x)},
                  {"initial_y", format_double(cfg.initial_state.y)},
                  {"initial_z", format_double(cfg.initial_state.z)},
                  {"quadrature", std::to_string(q.n_theta) + "x" + std::to_string(q.n_phi)},
                  {"abscissa_label", "t"}};
  return out;
}

}  // namespace oqsim
