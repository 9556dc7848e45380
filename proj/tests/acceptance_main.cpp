// acceptance_main.cpp - end-to-end acceptance gate. Each numbered check prints
// one [PASS]/[FAIL] line; the process exits nonzero if any check fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "helpers.hpp"
#include "oqsim/oqsim.hpp"

using namespace oqsim;

namespace {

int g_failures = 0;

struct Criterion {
  int number;
  std::string title;
  bool ok = true;
  std::vector<std::string> notes;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Criterion(int n, std::string t) : number(n), title(std::move(t)) {}

  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      notes.push_back(why);
    }
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  void finish(double budget_seconds = 0) {
    const double dt = elapsed();
    if (budget_seconds > 0 && dt > budget_seconds)
      require(false, "time budget exceeded: " + format_double(dt) + " s > " +
                         format_double(budget_seconds) + " s");
    std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", number, title.c_str(),
                dt);
    for (const auto& n : notes) std::printf("        %s\n", n.c_str());
    if (!ok) ++g_failures;
    std::fflush(stdout);
  }
};

// 1. The angular quadrature reproduces the closed-form nonclassical volume at
//    the default 64x128 resolution, across radii on both sides of the
//    classicality threshold, within 1e-8, in under a second.
void criterion_1() {
  Criterion c(1, "volume quadrature matches the closed form to 1e-8");
  const double radii[] = {0.0, 0.3, 1.0 / std::sqrt(3.0), 0.7, 0.9996, 1.0};
  const double s3 = 1.0 / std::sqrt(3.0);
  const BlochVector dirs[] = {{0, 0, 1}, {1, 0, 0}, {0.48, -0.60, 0.64}, {-s3, s3, -s3}};
  double worst = 0;
  for (double r : radii)
    for (const BlochVector& d : dirs) {
      const double got = nonclassical_volume(from_bloch({r * d.x, r * d.y, r * d.z}));
      worst = std::max(worst, std::abs(got - closed_form_delta(r)));
    }
  c.require(worst <= 1e-8, "worst deviation " + format_double(worst));
  c.finish(1.0);
}

// 2. The general (spectral) and qubit (closed-form) ergotropy routes agree to
//    1e-10 on 1000 random states and splittings.
void criterion_2() {
  Criterion c(2, "ergotropy routes agree to 1e-10 on 1000 random states");
  std::mt19937 rng(20260819u);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const BlochVector b = test_helpers::random_bloch_in_ball(rng);
    const double omega0 = w(rng);
    const double general = ergotropy_general(from_bloch(b), 0.5 * omega0 * pauli_z());
    worst = std::max(worst, std::abs(general - ergotropy_qubit(b, omega0)));
  }
  c.require(worst <= 1e-10, "worst deviation " + format_double(worst));
  c.finish();
}

// 3. The contracted and decomposed entropy-production routes agree to 1e-8 on
//    100 random two-qubit evolutions, production is never meaningfully
//    negative, and every model reports zero production before any evolution.
void criterion_3() {
  Criterion c(3, "entropy production routes agree; zero before evolution");
  std::mt19937 rng(77u);
  double worst_gap = 0, most_negative = 0;
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho_s = from_bloch(test_helpers::random_bloch_in_ball(rng));
    DensityMatrix env = test_helpers::random_density(rng, 2);
    env.mat = (0.95 * env.mat + 0.025 * identity(2)).eval();  // keep full rank
    const ComplexMatrix u = expm_generator(test_helpers::random_hermitian(rng, 4), 1.0);
    ComplexMatrix joint = u * kron(rho_s.mat, env.mat) * u.adjoint();
    joint = 0.5 * (joint + joint.adjoint()).eval();
    const EntropyProduction ep = entropy_production_joint({joint, {2, 2}}, env);
    const double decomposed = ep.mutual_information + ep.env_relative_entropy;
    worst_gap = std::max(worst_gap, std::abs(ep.value - decomposed));
    most_negative = std::min(most_negative, ep.value);
  }
  c.require(worst_gap <= 1e-8, "route gap " + format_double(worst_gap));
  c.require(most_negative >= -1e-9, "negative production " + format_double(most_negative));

  {
    const CollisionConfig cfg;
    const DensityMatrix rho_th = thermal_qubit(cfg.beta, cfg.omega_r);
    const ComplexMatrix joint = kron(from_bloch(cfg.initial_state).mat, rho_th.mat);
    const double s0 = entropy_production_joint({joint, {2, 2}}, rho_th).value;
    c.require(std::abs(s0) <= 1e-10, "collision |sigma(0)| = " + format_double(std::abs(s0)));
  }
  {
    CentralSpinConfig cfg;
    cfg.t_grid = {0.0};
    const double s0 = run_central_spin(cfg).records[0].sigma;
    c.require(std::abs(s0) <= 1e-9, "central-spin |sigma(0)| = " + format_double(std::abs(s0)));
  }
  {
    JcmConfig cfg;
    cfg.t_grid = {0.0};
    const double s0 = run_jcm(cfg).records[0].sigma;
    c.require(std::abs(s0) <= 1e-9, "jcm |sigma(0)| = " + format_double(std::abs(s0)));
  }
  {
    NmadConfig cfg;
    cfg.t_grid = {0.0, 1.0};
    c.require(run_nmad(cfg).records[0].sigma == 0.0, "nmad sigma(0) is not exactly zero");
    GadConfig gcfg;
    gcfg.t_grid = {0.0, 1.0};
    c.require(run_gad(gcfg).records[0].sigma == 0.0, "gad sigma(0) is not exactly zero");
  }
  c.finish();
}

// 4. Fixed-step integration of the thermal damping model tracks the closed
//    form to 1e-6 over [0, 200] at the default step, and the late-time state
//    is the thermal attractor.
void criterion_4() {
  Criterion c(4, "thermal damping integration tracks the closed form");
  GadConfig cfg;
  cfg.t_grid = uniform_grid(0.0, 200.0, 21);
  const RunOutput out = run_gad(cfg);
  double worst_s = 0, worst_w = 0;
  for (std::size_t k = 0; k < out.records.size(); ++k) {
    const BlochVector want = gad_closed_form(cfg, cfg.t_grid[k]);
    worst_s =
        std::max(worst_s, std::abs(out.records[k].entropy - von_neumann_entropy(from_bloch(want))));
    worst_w =
        std::max(worst_w, std::abs(out.records[k].ergotropy - ergotropy_qubit(want, cfg.omega0)));
  }
  c.require(worst_s <= 1e-6, "entropy deviation " + format_double(worst_s));
  c.require(worst_w <= 1e-6, "ergotropy deviation " + format_double(worst_w));

  const double z_inf = -std::tanh(0.5 * cfg.beta * cfg.omega0);
  const BlochVector end = gad_closed_form(cfg, 200.0);
  c.require(std::abs(end.z - z_inf) <= 1e-8, "inversion missed the thermal value");
  const double s_th = von_neumann_entropy(thermal_qubit(cfg.beta, cfg.omega0));
  c.require(std::abs(out.records.back().entropy - s_th) <= 1e-6,
            "final entropy is not thermal");
  c.require(std::abs(out.records.back().ergotropy) <= 1e-6, "final state is not passive");
  c.finish(10.0);
}

// 5. Exact joint propagation conserves the conserved quantities at the bundled
//    sizes: excitation number and energy for the cavity model, energy and
//    global purity for the 50-spin central-spin model, each to 1e-8.
void criterion_5() {
  Criterion c(5, "exact propagation conserves invariants at full size");
  const auto expect = [](const ComplexMatrix& rho, const ComplexMatrix& a) {
    return rho.cwiseProduct(a.transpose()).sum().real();
  };
  {
    const JcmConfig cfg;
    const ThermalFockState tf = thermal_fock(cfg.beta, cfg.omega_c, cfg.n_max);
    const ComplexMatrix joint0 = kron(from_bloch(cfg.initial_state).mat, tf.state.mat);
    const ComplexMatrix h = jcm_hamiltonian(cfg);
    const ComplexMatrix nex = jcm_excitation_operator(cfg);
    const SpectralPropagator prop(h, joint0);
    const double e0 = expect(joint0, h);
    const double n0 = expect(joint0, nex);
    double drift = 0;
    for (double t : cfg.t_grid) {
      const ComplexMatrix rho = prop.state_at(t);
      drift = std::max(drift, std::abs(expect(rho, h) - e0));
      drift = std::max(drift, std::abs(expect(rho, nex) - n0));
    }
    c.require(drift <= 1e-8, "cavity-model drift " + format_double(drift));
  }
  {
    const CentralSpinConfig cfg;
    const DensityMatrix rho_b = gibbs_state(central_spin_bath_hamiltonian(cfg), cfg.beta);
    const ComplexMatrix joint0 = kron(from_bloch(cfg.initial_state).mat, rho_b.mat);
    const ComplexMatrix h = central_spin_hamiltonian(cfg);
    const SpectralPropagator prop(h, joint0);
    const double e0 = expect(joint0, h);
    const double p0 = joint0.squaredNorm();
    double drift = 0;
    for (double t : cfg.t_grid) {
      const ComplexMatrix rho = prop.state_at(t);
      drift = std::max(drift, std::abs(expect(rho, h) - e0));
      drift = std::max(drift, std::abs(rho.squaredNorm() - p0));
    }
    c.require(drift <= 1e-8, "central-spin drift " + format_double(drift));
  }
  c.finish(60.0);
}

// 6. With the inter-ancilla swap off, the chain is a repeated application of
//    one CPTP map: the trace distance to that map's fixed point shrinks
//    monotonically below 1e-6, and iterating the superoperator reproduces the
//    chain's reduced states to 1e-10.
void criterion_6() {
  Criterion c(6, "memoryless chain contracts onto the one-step fixed point");
  CollisionConfig cfg;
  cfg.theta = 0.0;
  const std::vector<DensityMatrix> states = collision_reduced_states(cfg);
  const DensityMatrix star = collision_fixed_point(cfg);
  bool monotone = true;
  double dist = trace_distance(states[0].mat, star.mat);
  for (std::size_t n = 1; n < states.size(); ++n) {
    const double next = trace_distance(states[n].mat, star.mat);
    if (next > dist + 1e-12) monotone = false;
    dist = next;
  }
  c.require(monotone, "trace distance to the fixed point is not monotone");
  c.require(dist < 1e-6, "final distance " + format_double(dist));

  const ComplexMatrix m = collision_map_superoperator(cfg);
  Eigen::VectorXcd v(4);
  for (Eigen::Index col = 0; col < 2; ++col)
    for (Eigen::Index row = 0; row < 2; ++row) v[row + 2 * col] = states[0].mat(row, col);
  double worst = 0;
  for (std::size_t n = 1; n < states.size(); ++n) {
    v = m * v;
    ComplexMatrix x(2, 2);
    for (Eigen::Index col = 0; col < 2; ++col)
      for (Eigen::Index row = 0; row < 2; ++row) x(row, col) = v[row + 2 * col];
    worst = std::max(worst, (x - states[n].mat).cwiseAbs().maxCoeff());
  }
  c.require(worst <= 1e-10, "superoperator/chain gap " + format_double(worst));
  c.finish();
}

// 7. All five bundled parameter sets show the expected sign structure: the
//    nonclassical volume anticorrelates with entropy, and entropy production
//    anticorrelates with ergotropy. The structured-damping conclusion is
//    insensitive to the reference regularization across six orders of
//    magnitude.
void criterion_7() {
  Criterion c(7, "all five bundled runs show both negative correlations");
  std::vector<FigureResult> results;
  try {
    results = reproduce_figures("acceptance_figures");
  } catch (const std::exception& e) {
    c.require(false, e.what());
    c.finish(300.0);
    return;
  }
  for (const auto& r : results) {
    std::printf("        %-14s corr(volume, entropy) = %+.4f  "
                "corr(production, ergotropy) = %+.4f\n",
                r.model.c_str(), r.corr_delta_entropy, r.corr_sigma_ergotropy);
    c.require(r.corr_delta_entropy < 0, r.model + ": volume/entropy correlation not negative");
    c.require(r.corr_sigma_ergotropy < 0,
              r.model + ": production/ergotropy correlation not negative");
  }

  const double eps[] = {1e-6, 1e-9, 1e-12};
  double ce[3], cw[3];
  for (int i = 0; i < 3; ++i) {
    NmadConfig cfg;
    cfg.reg_epsilon = eps[i];
    const RunOutput out = run_nmad(cfg);
    std::vector<double> d, s, sg, w;
    for (const auto& r : out.records) {
      d.push_back(r.delta);
      s.push_back(r.entropy);
      sg.push_back(r.sigma);
      w.push_back(r.ergotropy);
    }
    ce[i] = corr(d, s);
    cw[i] = corr(sg, w);
    c.require(ce[i] < 0 && cw[i] < 0,
              "structured damping signs flip at reg_epsilon = " + format_double(eps[i]));
  }
  for (int i = 1; i < 3; ++i)
    c.require(std::abs(ce[i] - ce[0]) <= 0.05 && std::abs(cw[i] - cw[0]) <= 0.05,
              "correlations drift with the regularization choice");
  c.finish(300.0);
}

// 8. Substitute magnitude anchors. The bundled trajectories have no
//    independent tabulated reference for their absolute magnitudes, so
//    exact-by-construction anchors stand in: at the first zero of the
//    structured-damping amplitude response the qubit passes through the
//    ground state exactly, and the bundled initial state has independently
//    frozen quantifier values.
void criterion_8() {
  Criterion c(8, "substitute anchors: ground-state passage and frozen values");
  NmadConfig cfg;
  const double mu = std::sqrt(2.0 * cfg.gamma0 * cfg.lambda - cfg.lambda * cfg.lambda);
  const double t1 = 2.0 * (std::numbers::pi - std::atan(mu / cfg.lambda)) / mu;
  c.require(std::abs(t1 - 1.4253209880493556) <= 1e-12, "first response zero moved");
  cfg.t_grid = {t1};
  const RunOutput at = run_nmad(cfg);
  c.require(std::abs(at.records[0].delta - closed_form_delta(1.0)) <= 1e-9,
            "volume at the zero is not the pure-state value");
  c.require(std::abs(at.records[0].ergotropy) <= 1e-12, "ground state holds no work");
  c.require(std::abs(at.records[0].entropy) <= 1e-10, "ground state is not pure");

  const BlochVector b0 = default_initial_bloch();
  const DensityMatrix rho0 = from_bloch(b0);
  c.require(std::abs(nonclassical_volume(rho0) - 0.15446959829006923) <= 1e-12,
            "initial-state volume anchor moved");
  c.require(std::abs(von_neumann_entropy(rho0) - 0.0019037594490128574) <= 1e-12,
            "initial-state entropy anchor moved");
  c.require(std::abs(ergotropy_qubit(b0, 1.5) - 0.254699939975988) <= 1e-12,
            "initial-state ergotropy anchor moved");
  c.require(std::abs(closed_form_delta(1.0) - (2.0 / std::sqrt(3.0) - 1.0)) <= 1e-15,
            "pure-state volume is not 2/sqrt(3) - 1");
  c.finish();
}

}  // namespace

int main() {
  std::printf("acceptance checks, library version %s\n", kVersion);
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
