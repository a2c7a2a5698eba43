#pragma once

#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "allmach/euler_state.hpp"
#include "allmach/grid.hpp"

namespace allmach {

/// Explicit Runge-Kutta coefficients. `a` is stored row-major s x s.
struct ButcherTableau {
  std::string name;
  int stages = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  double coeff(int i, int j) const { return a[static_cast<std::size_t>(i) * stages + j]; }
  /// Checks strict lower triangularity, sum(b) = 1 and the row-sum
  /// convention for c; throws std::invalid_argument.
  void validate() const;
};

ButcherTableau euler_tableau();
ButcherTableau heun2_tableau();
ButcherTableau heun3_tableau();
/// Classical four-stage method; used in the stability analysis only.
ButcherTableau rk4_tableau();

/// Raised when a right-hand-side evaluation fails inside a stage; the
/// original exception is nested.
class StageError : public std::runtime_error {
 public:
  explicit StageError(int stage)
      : std::runtime_error("right-hand side failed in stage " + std::to_string(stage)),
        stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

class DegenerateHistory : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
using StateVector = std::vector<T>;

template <class T>
using Rhs = std::function<void(double t, const StateVector<T>& y, StateVector<T>& dydt)>;

namespace detail {
template <class T>
void add_scaled(StateVector<T>& acc, double s, const StateVector<T>& x) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += s * x[k];
}
}  // namespace detail

/// One explicit Runge-Kutta step:
///   k_i = f(t + c_i dt, y + dt sum_j a_ij k_j),  y_next = y + dt sum_i b_i k_i.
template <class T>
StateVector<T> rk_step(const ButcherTableau& tab, const Rhs<T>& rhs, double t,
                       const StateVector<T>& y, double dt) {
  std::vector<StateVector<T>> k(tab.stages);
  StateVector<T> stage;
  for (int i = 0; i < tab.stages; ++i) {
    stage = y;
    for (int j = 0; j < i; ++j)
      if (tab.coeff(i, j) != 0.0) detail::add_scaled(stage, dt * tab.coeff(i, j), k[j]);
    try {
      rhs(t + tab.c[i] * dt, stage, k[i]);
    } catch (...) {
      std::throw_with_nested(StageError(i + 1));
    }
  }
  StateVector<T> out = y;
  for (int i = 0; i < tab.stages; ++i)
    if (tab.b[i] != 0.0) detail::add_scaled(out, dt * tab.b[i], k[i]);
  return out;
}

/// Weights beta_j (dt included) such that
///   y_{n+1} = y_n + sum_j beta_j f_{n-j}
/// integrates the polynomial interpolating the f-history exactly over
/// [t_n, t_next]. `times` is newest first and strictly decreasing.
std::vector<double> ab_coefficients(std::span<const double> times, double t_next);

/// Right-hand-side history for Adams-Bashforth, newest entry first.
template <class T>
class AdamsHistory {
 public:
  struct Entry {
    double t;
    StateVector<T> f;
  };

  explicit AdamsHistory(int order_target) : order_target_(order_target) {
    if (order_target < 1 || order_target > 5)
      throw std::invalid_argument("Adams-Bashforth order must be in 1..5");
  }

  int order_target() const { return order_target_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t k) const { return entries_[k]; }

  void push(double t, StateVector<T> f) {
    if (!entries_.empty() && !(t > entries_.front().t))
      throw DegenerateHistory("history times must increase strictly");
    if (static_cast<int>(entries_.size()) == order_target_) entries_.pop_back();
    entries_.push_front(Entry{t, std::move(f)});
  }

  void clear() { entries_.clear(); }

 private:
  int order_target_;
  std::deque<Entry> entries_;
};

/// Adams-Bashforth update using every stored entry: one entry gives
/// explicit Euler, two AB2, three AB3.
template <class T>
StateVector<T> ab_step(const AdamsHistory<T>& history, const StateVector<T>& y, double t_next) {
  if (history.empty()) throw DegenerateHistory("empty Adams-Bashforth history");
  std::vector<double> times(history.size());
  for (std::size_t k = 0; k < history.size(); ++k) times[k] = history[k].t;
  const std::vector<double> beta = ab_coefficients(times, t_next);
  StateVector<T> out = y;
  for (std::size_t k = 0; k < beta.size(); ++k) detail::add_scaled(out, beta[k], history[k].f);
  return out;
}

/// Integrators selectable for the PDE time loop.
enum class IntegratorKind { Euler, RK2, RK3, AB2, AB3, MusclHancock };

std::string_view integrator_name(IntegratorKind k);
/// Throws std::invalid_argument for unknown names.
IntegratorKind parse_integrator(std::string_view name);

/// CFL multiplier per method family: RK keeps or slightly raises the
/// explicit Euler CFL, AB lowers it with increasing order.
double default_method_factor(IntegratorKind k);

struct StepController {
  double cfl = 0.45;
  double method_factor = 1.0;

  double effective_cfl() const { return cfl * method_factor; }
};

/// dt = cfl * method_factor * min over cells of width / (|v| + c).
double cfl_dt(const std::vector<PrimitiveState>& field, const StructuredGrid& grid,
              const StepController& controller, const GasModel& gas);

}  // namespace allmach
