// record.hpp - per-sample quantifier records, run outputs, grid helpers.
#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "oqsim/numerics.hpp"

namespace oqsim {

inline constexpr const char* kVersion = "0.1.0";

/// One sampled point along a trajectory: the abscissa (time or collision
/// index) and the four quantifiers evaluated on the reduced qubit state.
struct QuantifierRecord {
  double abscissa = 0;
  double delta = 0;     // nonclassical volume
  double entropy = 0;   // von Neumann entropy, natural log
  double sigma = 0;     // entropy production
  double ergotropy = 0;
};

/// Records plus ordered key/value metadata describing how they were produced.
struct RunOutput {
  std::vector<QuantifierRecord> records;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Uniform grid of n points from t0 to t1 inclusive (n == 1 gives {t0}).
inline std::vector<double> uniform_grid(double t0, double t1, int n) {
  if (n < 1) throw Error("uniform_grid: need at least one point");
  if (n == 1) return {t0};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (n - 1);
  return g;
}

/// Grid {0, step, 2 step, ...} with n points.
inline std::vector<double> sample_grid(double step, int n) {
  if (n < 1) throw Error("sample_grid: need at least one point");
  if (step <= 0) throw Error("sample_grid: step must be positive");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = step * k;
  return g;
}

inline void check_time_grid(const std::vector<double>& g, const char* what) {
  if (g.empty()) throw ConfigError(std::string(what) + ": time grid must be nonempty");
  if (g.front() < 0) throw ConfigError(std::string(what) + ": time grid must start at t >= 0");
  for (std::size_t k = 1; k < g.size(); ++k)
    if (g[k] <= g[k - 1])
      throw ConfigError(std::string(what) + ": time grid must be strictly increasing");
}

/// Shortest round-trippable decimal form (12 significant digits).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Writes through a temporary file and renames, so readers never observe a
/// partially written file.
inline void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open for writing: " + tmp);
    f << content;
    f.flush();
    if (!f) throw Error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("rename failed for: " + path);
}

}  // namespace oqsim
