#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "chemotaxis/model.hpp"

namespace testing {

// Fixed seed everywhere: the suite is deterministic.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline chemotaxis::Field sample(const chemotaxis::Grid& g, const std::function<double(double)>& f) {
  chemotaxis::Field out(g.n_nodes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(g.x(i));
  return out;
}

inline double sup_diff(const chemotaxis::Field& a, const chemotaxis::Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

// Distance in units in the last place.
inline double ulps(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::abs(std::nextafter(a, b) - a);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace testing
