// runner.hpp - config parsing, run dispatch, CSV output, figure reproduction.
#pragma once

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oqsim/plot.hpp"
#include "oqsim/quantifiers.hpp"
#include "oqsim/record.hpp"
#include "oqsim/spin_boson.hpp"
#include "oqsim/spin_spin.hpp"

namespace oqsim {

enum class Model { collision, central_spin, nmad, gad, jcm };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::collision: return "collision";
    case Model::central_spin: return "central-spin";
    case Model::nmad: return "nmad";
    case Model::gad: return "gad";
    case Model::jcm: return "jcm";
  }
  return "unknown";
}

inline Model model_from_name(const std::string& s) {
  if (s == "collision") return Model::collision;
  if (s == "central-spin") return Model::central_spin;
  if (s == "nmad") return Model::nmad;
  if (s == "gad") return Model::gad;
  if (s == "jcm") return Model::jcm;
  throw ConfigError("unknown model '" + s +
                    "' (expected collision, central-spin, nmad, gad or jcm)");
}

/// Everything needed for one run: the model tag, its parameters (bundled
/// per-model, only the selected one is used) and the quadrature resolution.
struct RunSpec {
  Model model = Model::collision;
  QuadratureSpec quadrature;
  CollisionConfig collision;
  CentralSpinConfig central_spin;
  NmadConfig nmad;
  GadConfig gad;
  JcmConfig jcm;
};

inline RunOutput run(const RunSpec& spec) {
  switch (spec.model) {
    case Model::collision: return run_collision(spec.collision, spec.quadrature);
    case Model::central_spin: return run_central_spin(spec.central_spin, spec.quadrature);
    case Model::nmad: return run_nmad(spec.nmad, spec.quadrature);
    case Model::gad: return run_gad(spec.gad, spec.quadrature);
    case Model::jcm: return run_jcm(spec.jcm, spec.quadrature);
  }
  throw Error("run: unhandled model");
}

namespace detail {

inline std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

inline double parse_number(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("key '" + key + "': cannot parse number from '" + v + "'");
  if (errno == ERANGE || !std::isfinite(x))
    throw ConfigError("key '" + key + "': value out of range");
  return x;
}

inline int parse_int(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("key '" + key + "': cannot parse integer from '" + v + "'");
  if (errno == ERANGE || x > 1000000000L || x < -1000000000L)
    throw ConfigError("key '" + key + "': integer out of range");
  return static_cast<int>(x);
}

}  // namespace detail

/// Parses the flat "key = value" config format. Lines starting with '#' (and
/// trailing '#' comments) are ignored. Unknown and duplicate keys are errors;
/// all parameters default to the bundled figure values of the chosen model.
inline RunSpec parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    for (const auto& [k, v] : entries)
      if (k == key) throw ConfigError("duplicate key '" + key + "'");
    entries.emplace_back(std::move(key), std::move(value));
  }

  std::string model_value;
  for (const auto& [k, v] : entries)
    if (k == "model") model_value = v;
  if (model_value.empty()) throw ConfigError("missing required key 'model'");

  RunSpec spec;
  spec.model = model_from_name(model_value);

  // grid-shaping keys, applied after the scan
  double t_max = 0;
  int n_samples = 0;
  double jcm_tau = 0;
  bool has_t_max = false, has_n_samples = false, has_tau = false;

  const auto unknown = [&](const std::string& key) {
    throw ConfigError("unknown key '" + key + "' for model '" + model_value + "'");
  };

  for (const auto& [key, value] : entries) {
    if (key == "model") continue;
    // keys shared by every model
    if (key == "initial_x" || key == "initial_y" || key == "initial_z") {
      const double x = detail::parse_number(key, value);
      BlochVector* b = nullptr;
      switch (spec.model) {
        case Model::collision: b = &spec.collision.initial_state; break;
        case Model::central_spin: b = &spec.central_spin.initial_state; break;
        case Model::nmad: b = &spec.nmad.initial_state; break;
        case Model::gad: b = &spec.gad.initial_state; break;
        case Model::jcm: b = &spec.jcm.initial_state; break;
      }
      if (key == "initial_x") b->x = x;
      if (key == "initial_y") b->y = x;
      if (key == "initial_z") b->z = x;
      continue;
    }
    if (key == "n_theta") {
      spec.quadrature.n_theta = detail::parse_int(key, value);
      if (spec.quadrature.n_theta < 8) throw ConfigError("n_theta must be at least 8");
      continue;
    }
    if (key == "n_phi") {
      spec.quadrature.n_phi = detail::parse_int(key, value);
      if (spec.quadrature.n_phi < 16) throw ConfigError("n_phi must be at least 16");
      continue;
    }
    if (key == "t_max" &&
        (spec.model == Model::central_spin || spec.model == Model::nmad ||
         spec.model == Model::gad)) {
      t_max = detail::parse_number(key, value);
      if (!(t_max > 0)) throw ConfigError("t_max must be positive");
      has_t_max = true;
      continue;
    }
    if (key == "n_samples" && spec.model != Model::collision) {
      n_samples = detail::parse_int(key, value);
      if (n_samples < 1) throw ConfigError("n_samples must be at least 1");
      has_n_samples = true;
      continue;
    }
    switch (spec.model) {
      case Model::collision: {
        auto& c = spec.collision;
        if (key == "omega_s") c.omega_s = detail::parse_number(key, value);
        else if (key == "omega_r") c.omega_r = detail::parse_number(key, value);
        else if (key == "beta") c.beta = detail::parse_number(key, value);
        else if (key == "g_sr") c.g_sr = detail::parse_number(key, value);
        else if (key == "tau") c.tau = detail::parse_number(key, value);
        else if (key == "theta") c.theta = detail::parse_number(key, value);
        else if (key == "n_collisions") c.n_collisions = detail::parse_int(key, value);
        else unknown(key);
        break;
      }
      case Model::central_spin: {
        auto& c = spec.central_spin;
        if (key == "omega0") c.omega0 = detail::parse_number(key, value);
        else if (key == "omega") c.omega = detail::parse_number(key, value);
        else if (key == "beta") c.beta = detail::parse_number(key, value);
        else if (key == "epsilon") c.epsilon = detail::parse_number(key, value);
        else if (key == "n_bath") c.n_bath = detail::parse_int(key, value);
        else unknown(key);
        break;
      }
      case Model::nmad: {
        auto& c = spec.nmad;
        if (key == "omega0") c.omega0 = detail::parse_number(key, value);
        else if (key == "lambda") c.lambda = detail::parse_number(key, value);
        else if (key == "gamma0") c.gamma0 = detail::parse_number(key, value);
        else if (key == "reg_epsilon") c.reg_epsilon = detail::parse_number(key, value);
        else unknown(key);
        break;
      }
      case Model::gad: {
        auto& c = spec.gad;
        if (key == "omega0") c.omega0 = detail::parse_number(key, value);
        else if (key == "beta") c.beta = detail::parse_number(key, value);
        else if (key == "gamma") c.gamma = detail::parse_number(key, value);
        else if (key == "dt") c.dt = detail::parse_number(key, value);
        else unknown(key);
        break;
      }
      case Model::jcm: {
        auto& c = spec.jcm;
        if (key == "omega0") c.omega0 = detail::parse_number(key, value);
        else if (key == "omega_c") c.omega_c = detail::parse_number(key, value);
        else if (key == "beta") c.beta = detail::parse_number(key, value);
        else if (key == "g") c.g = detail::parse_number(key, value);
        else if (key == "n_max") c.n_max = detail::parse_int(key, value);
        else if (key == "tau") {
          jcm_tau = detail::parse_number(key, value);
          if (!(jcm_tau > 0)) throw ConfigError("tau must be positive");
          has_tau = true;
        } else unknown(key);
        break;
      }
    }
  }

  switch (spec.model) {
    case Model::collision:
      validate_config(spec.collision);
      break;
    case Model::central_spin: {
      auto& c = spec.central_spin;
      c.t_grid = uniform_grid(0.0, has_t_max ? t_max : 20.0, has_n_samples ? n_samples : 400);
      validate_config(c);
      break;
    }
    case Model::nmad: {
      auto& c = spec.nmad;
      c.t_grid = uniform_grid(0.0, has_t_max ? t_max : 20.0, has_n_samples ? n_samples : 400);
      validate_config(c);
      break;
    }
    case Model::gad: {
      auto& c = spec.gad;
      c.t_grid = uniform_grid(0.0, has_t_max ? t_max : 100.0, has_n_samples ? n_samples : 400);
      validate_config(c);
      break;
    }
    case Model::jcm: {
      auto& c = spec.jcm;
      c.t_grid = sample_grid(has_tau ? jcm_tau : 0.5, has_n_samples ? n_samples : 400);
      validate_config(c);
      break;
    }
  }
  return spec;
}

inline RunSpec parse_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

/// CSV serialization: '#'-prefixed metadata lines, a header row, then one
/// %.12g-formatted row per record. LF line endings.
inline std::string csv_text(const RunOutput& out) {
  std::string s;
  for (const auto& [k, v] : out.metadata) s += "# " + k + " = " + v + "\n";
  s += "abscissa,delta,entropy,sigma,ergotropy\n";
  for (const auto& r : out.records)
    s += format_double(r.abscissa) + "," + format_double(r.delta) + "," +
         format_double(r.entropy) + "," + format_double(r.sigma) + "," +
         format_double(r.ergotropy) + "\n";
  return s;
}

inline void write_csv(const RunOutput& out, const std::string& path) {
  atomic_write_file(path, csv_text(out));
}

/// Pearson correlation; errors on mismatched/short input or zero variance.
inline double corr(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error("corr: length mismatch");
  if (a.size() < 3) throw Error("corr: need at least 3 samples");
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  double va = 0, vb = 0, cab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
    cab += (a[i] - ma) * (b[i] - mb);
  }
  if (va == 0 || vb == 0) throw Error("corr: zero variance");
  return cab / std::sqrt(va * vb);
}

struct FigureResult {
  std::string model;
  double corr_delta_entropy = 0;
  double corr_sigma_ergotropy = 0;
};

/// Runs all five bundled parameter sets, writes CSV and SVG files into
/// `out_dir`, and checks the sign structure: the nonclassical volume
/// anticorrelates with entropy and entropy production with ergotropy.
inline std::vector<FigureResult> reproduce_figures(const std::string& out_dir,
                                                   const QuadratureSpec& q = {}) {
  std::filesystem::create_directories(out_dir);
  const Model models[] = {Model::collision, Model::central_spin, Model::nmad, Model::gad,
                          Model::jcm};
  std::vector<FigureResult> results;
  for (Model m : models) {
    RunSpec spec;
    spec.model = m;
    spec.quadrature = q;
    const RunOutput out = run(spec);
    const std::string base = (std::filesystem::path(out_dir) / model_name(m)).string();
    write_csv(out, base + ".csv");
    write_plot(out, base + ".svg");
    std::vector<double> delta, entropy, sigma, ergotropy;
    for (const auto& r : out.records) {
      delta.push_back(r.delta);
      entropy.push_back(r.entropy);
      sigma.push_back(r.sigma);
      ergotropy.push_back(r.ergotropy);
    }
    FigureResult res{model_name(m), corr(delta, entropy), corr(sigma, ergotropy)};
    if (!(res.corr_delta_entropy < 0))
      throw Error(std::string("reproduce_figures: volume/entropy correlation is not negative "
                              "for model ") + model_name(m));
    if (!(res.corr_sigma_ergotropy < 0))
      throw Error(std::string("reproduce_figures: production/ergotropy correlation is not "
                              "negative for model ") + model_name(m));
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace oqsim
