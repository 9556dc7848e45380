// helpers.hpp - shared utilities for the test suite.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "oqsim/numerics.hpp"
#include "oqsim/states.hpp"

namespace test_helpers {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline oqsim::ComplexMatrix random_hermitian(std::mt19937& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  oqsim::ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = oqsim::Complex(d(rng), d(rng));
  return 0.5 * (m + m.adjoint()).eval();
}

inline oqsim::BlochVector random_bloch_in_ball(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  double v[3] = {g(rng), g(rng), g(rng)};
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  const double r = std::cbrt(u(rng));  // uniform over the ball volume
  if (n < 1e-12) return {0, 0, r};
  return {r * v[0] / n, r * v[1] / n, r * v[2] / n};
}

inline oqsim::DensityMatrix random_density(std::mt19937& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  oqsim::ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = oqsim::Complex(g(rng), g(rng));
  oqsim::ComplexMatrix m = a * a.adjoint();
  m /= m.trace().real();
  return {0.5 * (m + m.adjoint()).eval(), {n}};
}

// Minimal well-formedness check: balanced tags, quoted attribute values, one
// root element. Enough to catch broken SVG emission.
inline bool xml_well_formed(const std::string& s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  std::vector<std::string> stack;
  int roots = 0;
  while (i < n) {
    if (s[i] != '<') {
      ++i;
      continue;
    }
    if (s.compare(i, 5, "<?xml") == 0) {
      const auto end = s.find("?>", i);
      if (end == std::string::npos) return false;
      i = end + 2;
      continue;
    }
    if (s.compare(i, 4, "<!--") == 0) {
      const auto end = s.find("-->", i);
      if (end == std::string::npos) return false;
      i = end + 3;
      continue;
    }
    const auto close = s.find('>', i);
    if (close == std::string::npos) return false;
    std::string tag = s.substr(i + 1, close - i - 1);
    // quoted attributes: even number of double quotes
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (!tag.empty() && tag[0] == '/') {
      if (stack.empty()) return false;
      const std::string name = tag.substr(1);
      if (stack.back() != name) return false;
      stack.pop_back();
      if (stack.empty()) ++roots;
    } else if (!tag.empty() && tag.back() == '/') {
      if (stack.empty()) ++roots;
    } else {
      auto sp = tag.find_first_of(" \t\n");
      stack.push_back(sp == std::string::npos ? tag : tag.substr(0, sp));
    }
    i = close + 1;
  }
  return stack.empty() && roots >= 1;
}

}  // namespace test_helpers
