#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "allmach/euler_state.hpp"

namespace allmach::testing {

inline PrimitiveState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rho(0.1, 5.0), vel(-3.0, 3.0), p(0.1, 10.0);
  return {rho(rng), vel(rng), vel(rng), p(rng)};
}

inline double max_abs(const Vec4& v) {
  return std::max({std::abs(v.rho), std::abs(v.mx), std::abs(v.my), std::abs(v.E)});
}

/// max_k |a_k - b_k| / max(max_k |b_k|, floor)
inline double rel_diff(const Vec4& a, const Vec4& b, double floor = 1.0) {
  return max_abs(a - b) / std::max(max_abs(b), floor);
}

}  // namespace allmach::testing
