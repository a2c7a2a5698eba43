#include "allmach/time_integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace allmach {

void ButcherTableau::validate() const {
  const auto s = static_cast<std::size_t>(stages);
  if (stages < 1 || a.size() != s * s || b.size() != s || c.size() != s)
    throw std::invalid_argument("tableau dimensions inconsistent");
  for (int i = 0; i < stages; ++i) {
    double row = 0.0;
    for (int j = 0; j < stages; ++j) {
      if (j >= i && coeff(i, j) != 0.0)
        throw std::invalid_argument("tableau is not explicit");
      row += coeff(i, j);
    }
    if (std::abs(row - c[i]) > 1e-14) throw std::invalid_argument("c is not the row sum of A");
    if (c[i] < 0.0 || c[i] > 1.0) throw std::invalid_argument("abscissa outside [0, 1]");
  }
  if (std::abs(std::accumulate(b.begin(), b.end(), 0.0) - 1.0) > 1e-14)
    throw std::invalid_argument("weights do not sum to one");
}

ButcherTableau euler_tableau() { return {"euler", 1, {0.0}, {1.0}, {0.0}}; }

ButcherTableau heun2_tableau() {
  return {"heun2", 2, {0.0, 0.0, 1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}};
}

ButcherTableau heun3_tableau() {
  return {"heun3",
          3,
          {0.0, 0.0, 0.0,  //
           1.0 / 3.0, 0.0, 0.0,  //
           0.0, 2.0 / 3.0, 0.0},
          {0.25, 0.0, 0.75},
          {0.0, 1.0 / 3.0, 2.0 / 3.0}};
}

ButcherTableau rk4_tableau() {
  return {"rk4",
          4,
          {0.0, 0.0, 0.0, 0.0,  //
           0.5, 0.0, 0.0, 0.0,  //
           0.0, 0.5, 0.0, 0.0,  //
           0.0, 0.0, 1.0, 0.0},
          {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0},
          {0.0, 0.5, 0.5, 1.0}};
}

std::vector<double> ab_coefficients(std::span<const double> times, double t_next) {
  const std::size_t n = times.size();
  if (n == 0) throw DegenerateHistory("no history times");
  for (std::size_t k = 1; k < n; ++k)
    if (!(times[k] < times[k - 1])) throw DegenerateHistory("history times must be distinct and decreasing");
  const double h = t_next - times[0];
  if (!(h > 0.0)) throw DegenerateHistory("target time must lie after the newest history time");

  // nodes in the scaled variable s = (t - t_n) / h; integrate over s in [0, 1]
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = (times[k] - times[0]) / h;

  std::vector<double> beta(n);
  std::vector<double> poly;
  for (std::size_t j = 0; j < n; ++j) {
    // Lagrange basis polynomial l_j(s), coefficients in increasing degree
    poly.assign(1, 1.0);
    for (std::size_t m = 0; m < n; ++m) {
      if (m == j) continue;
      const double denom = s[j] - s[m];
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d + 1] += poly[d] / denom;
        next[d] -= poly[d] * s[m] / denom;
      }
      poly.swap(next);
    }
    double integral = 0.0;
    for (std::size_t d = 0; d < poly.size(); ++d) integral += poly[d] / static_cast<double>(d + 1);
    beta[j] = h * integral;
  }
  return beta;
}

std::string_view integrator_name(IntegratorKind k) {
  switch (k) {
    case IntegratorKind::Euler: return "euler";
    case IntegratorKind::RK2: return "rk2";
    case IntegratorKind::RK3: return "rk3";
    case IntegratorKind::AB2: return "ab2";
    case IntegratorKind::AB3: return "ab3";
    case IntegratorKind::MusclHancock: return "muscl-hancock";
  }
  return "?";
}

IntegratorKind parse_integrator(std::string_view name) {
  for (auto k : {IntegratorKind::Euler, IntegratorKind::RK2, IntegratorKind::RK3,
                 IntegratorKind::AB2, IntegratorKind::AB3, IntegratorKind::MusclHancock})
    if (integrator_name(k) == name) return k;
  throw std::invalid_argument("unknown integrator '" + std::string(name) + "'");
}

double default_method_factor(IntegratorKind k) {
  switch (k) {
    case IntegratorKind::Euler:
    case IntegratorKind::RK2:
    case IntegratorKind::MusclHancock:
      return 1.0;
    case IntegratorKind::RK3: return 1.2;
    case IntegratorKind::AB2: return 0.4;
    case IntegratorKind::AB3: return 0.15;
  }
  return 1.0;
}

double cfl_dt(const std::vector<PrimitiveState>& field, const StructuredGrid& grid,
              const StepController& controller, const GasModel& gas) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.nj(); ++j) {
    for (int i = 0; i < grid.ni(); ++i) {
      const PrimitiveState& w = field[grid.cell_index(i, j)];
      const double speed = std::hypot(w.u, w.v) + sound_speed(w, gas);
      best = std::min(best, grid.min_width(i, j) / speed);
    }
  }
  return controller.effective_cfl() * best;
}

}  // namespace allmach
