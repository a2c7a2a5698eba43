#include "allmach/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace allmach {

namespace {

ButcherTableau tableau_for(IntegratorKind k) {
  switch (k) {
    case IntegratorKind::RK2: return heun2_tableau();
    case IntegratorKind::RK3: return heun3_tableau();
    default: return euler_tableau();
  }
}

int ab_order(IntegratorKind k) {
  switch (k) {
    case IntegratorKind::AB2: return 2;
    case IntegratorKind::AB3: return 3;
    default: return 1;
  }
}

SchemeConfig effective_scheme(const CaseConfig& cfg) {
  SchemeConfig s = cfg.scheme;
  if (cfg.integrator == IntegratorKind::MusclHancock) {
    s.order = 2;
    s.hancock = true;
  }
  return s;
}

FailureRecord record_from(const CellBreakdown& cb, double time, std::size_t step, int stage) {
  return {time, step, stage, cb.i(), cb.j(), std::string(to_string(cb.kind())), cb.what()};
}

}  // namespace

Simulation::Simulation(const CaseConfig& cfg, CaseSetup setup)
    : cfg_(cfg),
      grid_(std::make_shared<const StructuredGrid>(std::move(setup.grid))),
      op_(*grid_, effective_scheme(cfg), cfg.strategy, cfg.gas),
      controller_{cfg.cfl, cfg.effective_method_factor()},
      tableau_(tableau_for(cfg.integrator)),
      history_(ab_order(cfg.integrator)),
      w_(std::move(setup.initial)) {
#ifdef _OPENMP
  omp_set_num_threads(cfg.threads);
#endif
  if (w_.size() != grid_->cell_count()) throw std::invalid_argument("initial field size mismatch");
  q_.resize(w_.size());
  for (std::size_t k = 0; k < w_.size(); ++k) q_[k] = primitive_to_conserved(w_[k], cfg_.gas);
}

Simulation::Simulation(const CaseConfig& cfg) : Simulation(cfg, build_case(cfg)) {}

double Simulation::stable_dt() const { return cfl_dt(w_, *grid_, controller_, cfg_.gas); }

void Simulation::rhs(const std::vector<ConservedState>& q, std::vector<ConservedState>& dqdt,
                     double dt) {
  op_.residual(q, dqdt, dt);
  fallbacks_in_step_ += op_.fallback_count();
}

const StepStats& Simulation::step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
  fallbacks_in_step_ = 0;
  std::vector<ConservedState> next;
  try {
    switch (cfg_.integrator) {
      case IntegratorKind::Euler:
      case IntegratorKind::RK2:
      case IntegratorKind::RK3:
        next = rk_step<ConservedState>(
            tableau_,
            [this](double, const std::vector<ConservedState>& y, std::vector<ConservedState>& f) {
              rhs(y, f, 0.0);
            },
            t_, q_, dt);
        break;
      case IntegratorKind::AB2:
      case IntegratorKind::AB3: {
        std::vector<ConservedState> f;
        rhs(q_, f, 0.0);
        history_.push(t_, std::move(f));
        next = ab_step(history_, q_, t_ + dt);
        break;
      }
      case IntegratorKind::MusclHancock: {
        std::vector<ConservedState> f;
        rhs(q_, f, dt);
        next = q_;
        detail::add_scaled(next, dt, f);
        break;
      }
    }
  } catch (const StageError& e) {
    try {
      std::rethrow_if_nested(e);
    } catch (const CellBreakdown& cb) {
      throw SimulationBreakdown(
          record_from(cb, t_ + tableau_.c[e.stage() - 1] * dt, steps_ + 1, e.stage()));
    }
    throw;
  } catch (const CellBreakdown& cb) {
    throw SimulationBreakdown(record_from(cb, t_, steps_ + 1, 1));
  }

  std::vector<PrimitiveState> w_next;
  try {
    op_.to_primitive(next, w_next);
  } catch (const CellBreakdown& cb) {
    throw SimulationBreakdown(record_from(cb, t_ + dt, steps_ + 1, 0));
  }

  // relative change rate, momentum scaled by sqrt(rho E)
  double s_rho = 0.0, s_m = 0.0, s_e = 0.0;
  for (const auto& q : q_) {
    s_rho = std::max(s_rho, std::abs(q.rho));
    s_m = std::max({s_m, std::abs(q.mx), std::abs(q.my)});
    s_e = std::max(s_e, std::abs(q.E));
  }
  s_m = std::max(s_m, std::sqrt(s_rho * s_e));
  double res = 0.0;
  for (std::size_t k = 0; k < q_.size(); ++k) {
    const ConservedState d = next[k] - q_[k];
    res = std::max({res, std::abs(d.rho) / s_rho, std::abs(d.mx) / s_m, std::abs(d.my) / s_m,
                    std::abs(d.E) / s_e});
  }

  q_.swap(next);
  w_.swap(w_next);
  t_ += dt;
  ++steps_;

  stats_ = StepStats{steps_, t_, dt, std::numeric_limits<double>::infinity(), 0.0,
                     fallbacks_in_step_, res / dt};
  for (const auto& w : w_) {
    stats_.min_p = std::min(stats_.min_p, w.p);
    stats_.max_speed = std::max(stats_.max_speed, std::hypot(w.u, w.v));
  }
  return stats_;
}

const StepStats& Simulation::step_to(double t_next) {
  step(t_next - t_);
  t_ = stats_.t = t_next;
  return stats_;
}

std::size_t Simulation::advance_to(double t_target) {
  std::size_t n = 0;
  const double eps = 1e-12 * std::max(1.0, std::abs(t_target));
  while (t_ < t_target - eps) {
    const double dt = stable_dt();
    if (t_ + dt > t_target - eps) step_to(t_target);
    else step(dt);
    ++n;
  }
  return n;
}

namespace {

std::string csv_text(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunResult config_failure(std::string message) {
  RunResult r;
  r.status = ExitStatus::ConfigError;
  r.message = std::move(message);
  return r;
}

}  // namespace

RunResult run(const CaseConfig& cfg) {
  RunResult result;
  std::unique_ptr<Simulation> sim;
  try {
    sim = std::make_unique<Simulation>(cfg, build_case(cfg));
  } catch (const ConfigError& e) {
    return config_failure(e.what());
  } catch (const std::invalid_argument& e) {
    return config_failure(e.what());
  }

  namespace fs = std::filesystem;
  const bool to_disk = !cfg.output_dir.empty();
  std::ofstream log;
  const fs::path dir(cfg.output_dir);
  if (to_disk) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return config_failure("cannot create output directory: " + ec.message());
    std::ofstream(dir / "config.ini") << serialize_config(cfg);
    result.written_files.push_back((dir / "config.ini").string());
    log.open(dir / "run_log.csv");
    if (!log) return config_failure("cannot write run log");
    log << "step,t,dt,min_p,max_speed,fallback_count\n";
    result.written_files.push_back((dir / "run_log.csv").string());
  }
  const auto write_snapshot = [&] {
    if (!to_disk) return;
    const FieldSnapshot snap = sim->snapshot();
    const fs::path csv = dir / snapshot_file_name(cfg.case_name, snap.time);
    write_snapshot_csv(snap, csv.string());
    result.written_files.push_back(csv.string());
    if (cfg.write_vtk) {
      fs::path vtk = csv;
      vtk.replace_extension(".vtk");
      write_snapshot_vtk(snap, vtk.string());
      result.written_files.push_back(vtk.string());
    }
  };

  write_snapshot();
  const double eps = 1e-12 * std::max(1.0, cfg.t_end);
  double next_out = std::min(cfg.cadence, cfg.t_end);
  try {
    while (sim->time() < cfg.t_end - eps) {
      const double dt = sim->stable_dt();
      const bool land = sim->time() + dt > next_out - eps;
      const StepStats st = land ? sim->step_to(next_out) : sim->step(dt);
      if (to_disk)
        log << st.step << ',' << g17(st.t) << ',' << g17(st.dt) << ',' << g17(st.min_p) << ','
            << g17(st.max_speed) << ',' << st.fallback_count << '\n';
      if (cfg.steady_tol > 0.0 && st.residual < cfg.steady_tol) {
        result.steady = true;
        write_snapshot();
        break;
      }
      if (land) {
        write_snapshot();
        next_out = std::min(next_out + cfg.cadence, cfg.t_end);
      }
    }
  } catch (const SimulationBreakdown& b) {
    result.status = ExitStatus::Breakdown;
    result.failure = b.record();
    result.message = b.what();
    if (to_disk) {
      const fs::path fail = dir / "failure.csv";
      std::ofstream out(fail);
      const FailureRecord& r = b.record();
      out << "t,step,stage,i,j,kind,message\n"
          << g17(r.time) << ',' << r.step << ',' << r.stage << ',' << r.i << ',' << r.j << ','
          << r.kind << ',' << csv_text(r.message) << '\n';
      result.written_files.push_back(fail.string());
    }
  }
  result.final_time = sim->time();
  result.steps = sim->steps();
  return result;
}

}  // namespace allmach
