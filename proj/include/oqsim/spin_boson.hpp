// spin_boson.hpp - amplitude-damping (memoryless and structured) and cavity engines.
#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "oqsim/numerics.hpp"
#include "oqsim/quantifiers.hpp"
#include "oqsim/record.hpp"
#include "oqsim/states.hpp"

namespace oqsim {

// ---------------------------------------------------------------------------
// structured amplitude damping: exact single-qubit reduced dynamics driven by
// a Lorentzian reservoir, parameterized by the amplitude response G(t).

struct NmadConfig {
  double omega0 = 10.0;
  double lambda = 0.05;      // reservoir spectral width
  double gamma0 = 50.0;      // flat-reservoir decay rate
  double reg_epsilon = 1e-9; // excited-state weight mixed into the reference
  std::vector<double> t_grid = uniform_grid(0.0, 20.0, 400);
  BlochVector initial_state = default_initial_bloch();
};

inline void validate_config(const NmadConfig& cfg) {
  if (!(cfg.lambda > 0)) throw ConfigError("nmad: lambda must be positive");
  if (!(cfg.gamma0 > 0)) throw ConfigError("nmad: gamma0 must be positive");
  if (!(cfg.reg_epsilon > 0 && cfg.reg_epsilon < 0.5))
    throw ConfigError("nmad: reg_epsilon out of range (0, 0.5)");
  check_time_grid(cfg.t_grid, "nmad");
  if (cfg.initial_state.norm() > 1.0 + 1e-9)
    throw ConfigError("nmad: initial Bloch vector norm exceeds 1");
}

/// Excited-amplitude response G(t) of the damped qubit. Real for all t; the
/// oscillatory regime 2 gamma0 > lambda has zero crossings. Evaluated through
/// overflow-safe branches (decaying exponentials, trig form, short-time
/// series near the degenerate point).
inline Complex g_function(double lambda, double gamma0, double t) {
  if (!(lambda > 0) || !(gamma0 > 0)) throw Error("g_function: lambda and gamma0 must be positive");
  if (t < 0) throw Error("g_function: t must be nonnegative");
  const double disc = lambda * lambda - 2.0 * gamma0 * lambda;
  const double labs = std::sqrt(std::abs(disc));
  double g = 0;
  if (labs * t < 1e-6) {
    g = std::exp(-0.5 * lambda * t) * (1.0 + 0.5 * lambda * t);
  } else if (disc > 0) {
    const double l = labs;  // l < lambda, so both exponents are negative
    g = 0.5 * ((1.0 + lambda / l) * std::exp(0.5 * (l - lambda) * t) +
               (1.0 - lambda / l) * std::exp(-0.5 * (l + lambda) * t));
  } else {
    const double mu = labs;
    g = std::exp(-0.5 * lambda * t) *
        (std::cos(0.5 * mu * t) + (lambda / mu) * std::sin(0.5 * mu * t));
  }
  return Complex(g, 0);
}

/// Applies the damping channel with amplitude response g to a 2x2 operator.
/// Populations contract by |g|^2 toward the ground state, coherences by g.
inline ComplexMatrix nmad_apply(Complex g, const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error("nmad_apply: expected a 2x2 operator");
  const double g2 = std::norm(g);
  ComplexMatrix out(2, 2);
  out(0, 0) = g2 * m(0, 0);
  out(0, 1) = g * m(0, 1);
  out(1, 0) = std::conj(g) * m(1, 0);
  out(1, 1) = m(1, 1) + (1.0 - g2) * m(0, 0);
  return out;
}

/// Instantaneous decay rate -2 Re[G'(t)/G(t)]. Diagnostic only: it diverges
/// at the zeros of G and is negative on the memory-driven revival intervals.
inline double nmad_decay_rate(double lambda, double gamma0, double t) {
  if (!(lambda > 0) || !(gamma0 > 0))
    throw Error("nmad_decay_rate: lambda and gamma0 must be positive");
  if (t < 0) throw Error("nmad_decay_rate: t must be nonnegative");
  const double disc = lambda * lambda - 2.0 * gamma0 * lambda;
  const double labs = std::sqrt(std::abs(disc));
  if (labs * t < 1e-6) return 2.0 * gamma0 * lambda * t / (2.0 + lambda * t);
  if (disc > 0) {
    const double th = std::tanh(0.5 * labs * t);
    return 2.0 * gamma0 * lambda * th / (labs + lambda * th);
  }
  const double s = std::sin(0.5 * labs * t);
  const double c = std::cos(0.5 * labs * t);
  return 2.0 * gamma0 * lambda * s / (labs * c + lambda * s);
}

/// Exact trajectory of the structured-damping qubit. Entropy production is
/// measured against the regularized attractor
/// (1 - reg_epsilon)|g><g| + reg_epsilon|e><e|.
inline RunOutput run_nmad(const NmadConfig& cfg, const QuadratureSpec& q = {}) {
  validate_config(cfg);
  const DensityMatrix rho0 = from_bloch(cfg.initial_state);
  ComplexMatrix star = ComplexMatrix::Zero(2, 2);
  star(0, 0) = cfg.reg_epsilon;
  star(1, 1) = 1.0 - cfg.reg_epsilon;
  const DensityMatrix rho_star{star, {2}};

  RunOutput out;
  for (double t : cfg.t_grid) {
    const Complex g = g_function(cfg.lambda, cfg.gamma0, t);
    const DensityMatrix rho_t{nmad_apply(g, rho0.mat), {2}};
    validate(rho_t);
    const double sigma = entropy_production_fixed_point(rho0, rho_t, rho_star);
    out.records.push_back(make_record(t, rho_t, sigma, cfg.omega0, q));
  }
  out.metadata = {{"version", kVersion},
                  {"model", "nmad"},
                  {"omega0", format_double(cfg.omega0)},
                  {"lambda", format_double(cfg.lambda)},
                  {"gamma0", format_double(cfg.gamma0)},
                  {"reg_epsilon", format_double(cfg.reg_epsilon)},
                  {"t_max", format_double(cfg.t_grid.back())},
                  {"n_samples", std::to_string(cfg.t_grid.size())},
                  {"initial_x", format_double(cfg.initial_state.x)},
                  {"initial_y", format_double(cfg.initial_state.y)},
                  {"initial_z", format_double(cfg.initial_state.z)},
                  {"quadrature", std::to_string(q.n_theta) + "x" + std::to_string(q.n_phi)},
                  {"abscissa_label", "t"}};
  return out;
}

// ---------------------------------------------------------------------------
// generalized amplitude damping: Markovian master equation with a finite
// temperature reservoir, integrated by fixed-step RK4.

struct GadConfig {
  double omega0 = 1.5;
  double beta = 1.0;   // reservoir inverse temperature
  double gamma = 0.05; // bare emission rate
  double dt = 1e-3;    // integrator step
  std::vector<double> t_grid = uniform_grid(0.0, 100.0, 400);
  BlochVector initial_state = default_initial_bloch();
};

inline void validate_config(const GadConfig& cfg) {
  if (!(cfg.gamma > 0)) throw ConfigError("gad: gamma must be positive");
  if (!(cfg.beta > 0)) throw ConfigError("gad: beta must be positive");
  if (!(cfg.dt > 0)) throw ConfigError("gad: dt must be positive");
  check_time_grid(cfg.t_grid, "gad");
  for (std::size_t k = 1; k < cfg.t_grid.size(); ++k)
    if (cfg.dt > cfg.t_grid[k] - cfg.t_grid[k - 1] + 1e-15)
      throw ConfigError("gad: dt larger than the smallest grid spacing");
  if (cfg.initial_state.norm() > 1.0 + 1e-9)
    throw ConfigError("gad: initial Bloch vector norm exceeds 1");
}

/// Mean thermal occupation 1/(exp(beta omega) - 1).
inline double thermal_occupation(double beta, double omega) {
  if (!(beta > 0) || !(omega > 0))
    throw Error("thermal_occupation: beta and omega must be positive");
  return 1.0 / std::expm1(beta * omega);
}

/// Right-hand side of the master equation: coherent precession plus thermally
/// weighted emission and absorption dissipators.
inline ComplexMatrix gad_generator(const GadConfig& cfg, const ComplexMatrix& rho) {
  const double nth = thermal_occupation(cfg.beta, cfg.omega0);
  const ComplexMatrix h = 0.5 * cfg.omega0 * pauli_z();
  const ComplexMatrix sm = sigma_minus();
  const ComplexMatrix sp = sigma_plus();
  const ComplexMatrix pe = sp * sm;  // |e><e|
  const ComplexMatrix pg = sm * sp;  // |g><g|
  ComplexMatrix d = Complex(0, -1) * (h * rho - rho * h);
  d += cfg.gamma * (nth + 1.0) * (sm * rho * sp - 0.5 * (pe * rho + rho * pe));
  d += cfg.gamma * nth * (sp * rho * sm - 0.5 * (pg * rho + rho * pg));
  return d;
}

/// Analytic solution: coherences precess at omega0 and contract at Gamma/2,
/// the inversion relaxes at Gamma toward -tanh(beta omega0 / 2), where
/// Gamma = gamma (2 nth + 1).
inline BlochVector gad_closed_form(const GadConfig& cfg, double t) {
  const double nth = thermal_occupation(cfg.beta, cfg.omega0);
  const double big_gamma = cfg.gamma * (2.0 * nth + 1.0);
  const double z_inf = -1.0 / (2.0 * nth + 1.0);
  const double damp = std::exp(-0.5 * big_gamma * t);
  const double c = std::cos(cfg.omega0 * t);
  const double s = std::sin(cfg.omega0 * t);
  const BlochVector b0 = cfg.initial_state;
  BlochVector b;
  b.x = damp * (b0.x * c - b0.y * s);
  b.y = damp * (b0.x * s + b0.y * c);
  b.z = z_inf + (b0.z - z_inf) * std::exp(-big_gamma * t);
  return b;
}

inline RunOutput run_gad(const GadConfig& cfg, const QuadratureSpec& q = {}) {
  validate_config(cfg);
  const DensityMatrix rho0 = from_bloch(cfg.initial_state);
  const DensityMatrix rho_star = thermal_qubit(cfg.beta, cfg.omega0);

  auto rk4_advance = [&](ComplexMatrix rho, double span) {
    const int steps = std::max(1, static_cast<int>(std::ceil(span / cfg.dt - 1e-12)));
    const double h = span / steps;
    for (int s = 0; s < steps; ++s) {
      const ComplexMatrix k1 = gad_generator(cfg, rho);
      const ComplexMatrix k2 = gad_generator(cfg, rho + 0.5 * h * k1);
      const ComplexMatrix k3 = gad_generator(cfg, rho + 0.5 * h * k2);
      const ComplexMatrix k4 = gad_generator(cfg, rho + h * k3);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
  };

  RunOutput out;
  ComplexMatrix rho = rho0.mat;
  double t_prev = 0;
  for (double t : cfg.t_grid) {
    if (t > t_prev) rho = rk4_advance(rho, t - t_prev);
    t_prev = t;
    ComplexMatrix snap = 0.5 * (rho + rho.adjoint());
    const DensityMatrix rho_t{std::move(snap), {2}};
    validate(rho_t);
    const double sigma = entropy_production_fixed_point(rho0, rho_t, rho_star);
    out.records.push_back(make_record(t, rho_t, sigma, cfg.omega0, q));
  }
  out.metadata = {{"version", kVersion},
                  {"model", "gad"},
                  {"omega0", format_double(cfg.omega0)},
                  {"beta", format_double(cfg.beta)},
                  {"gamma", format_double(cfg.gamma)},
                  {"dt", format_double(cfg.dt)},
                  {"t_max", format_double(cfg.t_grid.back())},
                  {"n_samples", std::to_string(cfg.t_grid.size())},
                  {"initial_x", format_double(cfg.initial_state.x)},
                  {"initial_y", format_double(cfg.initial_state.y)},
                  {"initial_z", format_double(cfg.initial_state.z)},
                  {"quadrature", std::to_string(q.n_theta) + "x" + std::to_string(q.n_phi)},
                  {"abscissa_label", "t"}};
  return out;
}

// ---------------------------------------------------------------------------
// qubit-cavity exchange: exact joint evolution with a truncated thermal mode.

struct JcmConfig {
  double omega0 = 1.5;  // qubit splitting
  double omega_c = 1.0; // cavity frequency
  double beta = 3.0;    // cavity inverse temperature
  double g = 0.5;       // exchange coupling
  int n_max = 32;       // Fock-space truncation
  std::vector<double> t_grid = sample_grid(0.5, 400);
  BlochVector initial_state = default_initial_bloch();
};

inline void validate_config(const JcmConfig& cfg) {
  if (!(cfg.g >= 0)) throw ConfigError("jcm: g must be nonnegative");
  if (cfg.n_max < 4) throw ConfigError("jcm: n_max must be at least 4");
  if (!(cfg.beta > 0)) throw ConfigError("jcm: beta must be positive");
  if (!(cfg.omega_c > 0)) throw ConfigError("jcm: omega_c must be positive");
  check_time_grid(cfg.t_grid, "jcm");
  if (cfg.initial_state.norm() > 1.0 + 1e-9)
    throw ConfigError("jcm: initial Bloch vector norm exceeds 1");
}

/// Exchange-coupling Hamiltonian on the 2 (n_max + 1) dimensional space.
inline ComplexMatrix jcm_hamiltonian(const JcmConfig& cfg) {
  const FockSpace fs = fock_space(cfg.n_max);
  const Eigen::Index db = cfg.n_max + 1;
  return 0.5 * cfg.omega0 * kron(pauli_z(), identity(db)) +
         cfg.omega_c * kron(identity(2), fs.number()) +
         cfg.g * (kron(sigma_plus(), fs.annihilate) + kron(sigma_minus(), fs.create));
}

/// Excitation-number operator |e><e| x I + I x n. It commutes with the
/// truncated Hamiltonian, so its expectation is conserved exactly.
inline ComplexMatrix jcm_excitation_operator(const JcmConfig& cfg) {
  const FockSpace fs = fock_space(cfg.n_max);
  const Eigen::Index db = cfg.n_max + 1;
  return kron(0.5 * (identity(2) + pauli_z()), identity(db)) + kron(identity(2), fs.number());
}

inline RunOutput run_jcm(const JcmConfig& cfg, const QuadratureSpec& q = {}) {
  validate_config(cfg);
  const Eigen::Index db = cfg.n_max + 1;
  const ThermalFockState tf = thermal_fock(cfg.beta, cfg.omega_c, cfg.n_max);
  const ComplexMatrix joint0 = kron(from_bloch(cfg.initial_state).mat, tf.state.mat);
  const SpectralPropagator prop(jcm_hamiltonian(cfg), joint0);

  RunOutput out;
  double max_top = 0;
  for (double t : cfg.t_grid) {
    const DensityMatrix j{prop.state_at(t), {2, db}};
    const DensityMatrix rho_s = reduced(j, {0});
    validate(rho_s);
    const DensityMatrix rho_c = reduced(j, {1});
    max_top = std::max(max_top, rho_c.mat(cfg.n_max, cfg.n_max).real());
    const EntropyProduction ep = entropy_production_joint(j, tf.state);
    out.records.push_back(make_record(t, rho_s, ep.value, cfg.omega0, q));
  }
  out.metadata = {{"version", kVersion},
                  {"model", "jcm"},
                  {"omega0", format_double(cfg.omega0)},
                  {"omega_c", format_double(cfg.omega_c)},
                  {"beta", format_double(cfg.beta)},
                  {"g", format_double(cfg.g)},
                  {"n_max", std::to_string(cfg.n_max)},
                  {"tau", format_double(cfg.t_grid.size() > 1 ? cfg.t_grid[1] - cfg.t_grid[0]
                                                              : 0.0)},
                  {"n_samples", std::to_string(cfg.t_grid.size())},
                  {"initial_x", format_double(cfg.initial_state.x)},
                  {"initial_y", format_double(cfg.initial_state.y)},
                  {"initial_z", format_double(cfg.initial_state.z)},
                  {"fock_tail_weight", format_double(tf.tail_weight)},
                  {"max_top_level_population", format_double(max_top)},
                  {"quadrature", std::to_string(q.n_theta) + "x" + std::to_string(q.n_phi)},
                  {"abscissa_label", "t"}};
  if (max_top > 1e-6)
    out.metadata.emplace_back("warning",
                              "truncation leakage: top Fock level population exceeds 1e-6");
  return out;
}

}  // namespace oqsim
