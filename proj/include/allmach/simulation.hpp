#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "allmach/cases.hpp"
#include "allmach/config.hpp"
#include "allmach/snapshot.hpp"
#include "allmach/spatial_scheme.hpp"
#include "allmach/time_integrators.hpp"

namespace allmach {

/// Where and how a run broke down.
struct FailureRecord {
  double time = 0.0;  // time of the state that failed to convert
  std::size_t step = 0;
  int stage = 0;      // RK stage (1-based) or 0 for the post-step check
  int i = -1, j = -1;
  std::string kind;
  std::string message;
};

class SimulationBreakdown : public std::runtime_error {
 public:
  explicit SimulationBreakdown(FailureRecord rec)
      : std::runtime_error(rec.message), record_(std::move(rec)) {}
  const FailureRecord& record() const { return record_; }

 private:
  FailureRecord record_;
};

struct StepStats {
  std::size_t step = 0;
  double t = 0.0;
  double dt = 0.0;
  double min_p = 0.0;
  double max_speed = 0.0;
  std::size_t fallback_count = 0;
  /// max over cells of |dq/dt| relative to the largest |q| per component
  double residual = 0.0;
};

/// In-process time stepper for one case.
class Simulation {
 public:
  Simulation(const CaseConfig& cfg, CaseSetup setup);
  explicit Simulation(const CaseConfig& cfg);

  const CaseConfig& config() const { return cfg_; }
  const StructuredGrid& grid() const { return *grid_; }
  std::shared_ptr<const StructuredGrid> grid_ptr() const { return grid_; }
  double time() const { return t_; }
  std::size_t steps() const { return steps_; }
  const std::vector<ConservedState>& conserved() const { return q_; }
  const std::vector<PrimitiveState>& primitive() const { return w_; }
  FieldSnapshot snapshot() const { return {t_, grid_, w_}; }
  const StepStats& last_stats() const { return stats_; }

  /// CFL-limited step size for the current state.
  double stable_dt() const;
  /// Advances by dt; throws SimulationBreakdown.
  const StepStats& step(double dt);
  /// Step that lands exactly on t_next.
  const StepStats& step_to(double t_next);
  /// Steps until t_target (last step clipped), returns the step count.
  std::size_t advance_to(double t_target);

 private:
  void rhs(const std::vector<ConservedState>& q, std::vector<ConservedState>& dqdt, double dt);

  CaseConfig cfg_;
  std::shared_ptr<const StructuredGrid> grid_;
  FiniteVolumeOperator op_;
  StepController controller_;
  ButcherTableau tableau_;
  AdamsHistory<ConservedState> history_;
  std::vector<ConservedState> q_;
  std::vector<PrimitiveState> w_;
  double t_ = 0.0;
  std::size_t steps_ = 0;
  std::size_t fallbacks_in_step_ = 0;
  StepStats stats_;
};

enum class ExitStatus : int { Clean = 0, Breakdown = 2, ConfigError = 64 };

struct RunResult {
  ExitStatus status = ExitStatus::Clean;
  std::string message;
  std::optional<FailureRecord> failure;
  std::vector<std::string> written_files;
  double final_time = 0.0;
  std::size_t steps = 0;
  bool steady = false;
};

/// Batch driver: validates, builds the case, steps to t_end writing
/// snapshots at the cadence plus the final time, a run log and, on
/// breakdown, a failure record. Nothing is written for invalid configs or
/// when output_dir is empty.
RunResult run(const CaseConfig& cfg);

}  // namespace allmach
