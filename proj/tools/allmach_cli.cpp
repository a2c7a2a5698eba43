// Command-line front end: batch runs, case listing and stability analysis.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "allmach/cases.hpp"
#include "allmach/config.hpp"
#include "allmach/simulation.hpp"
#include "allmach/stability_lab.hpp"

namespace {

using namespace allmach;

constexpr int kConfigExit = 64;

struct CurveMethod {
  std::string name;
  std::optional<ButcherTableau> tableau;
  std::optional<MultistepPolys> polys;
};

std::vector<CurveMethod> curve_methods(const std::string& which) {
  std::vector<CurveMethod> all = {{"euler", euler_tableau(), {}},
                                  {"heun2", heun2_tableau(), {}},
                                  {"heun3", heun3_tableau(), {}},
                                  {"rk4", rk4_tableau(), {}}};
  for (int k = 1; k <= 5; ++k) all.push_back({"ab" + std::to_string(k), {}, ab_polys(k)});
  if (which == "all") return all;
  for (auto& m : all)
    if (m.name == which) return {m};
  throw ConfigError("unknown method '" + which + "' (euler, heun2, heun3, rk4, ab1..ab5, all)");
}

void write_curve(std::ostream& out, const StabilityCurve& c, const std::string& method) {
  char buf[96];
  for (const auto& z : c.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
    out << curve_kind_name(c.kind) << ',' << method << ',' << buf << '\n';
  }
}

struct Output {
  std::ofstream file;
  std::ostream& stream(const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ConfigError("cannot write '" + path + "'");
    return file;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-speed finite-volume Euler solver"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a test case");
  std::string config_path, case_name, solver, integrator, limiter, out_dir;
  std::optional<double> cfl, t_end, phi, mach, noise, cadence, method_factor;
  std::optional<int> order, ni, nj, threads;
  std::optional<long long> seed;
  bool vtk = false;
  std::vector<std::string> sets;
  run_cmd->add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
  run_cmd->add_option("--case", case_name, "case name (overrides the file)");
  run_cmd->add_option("--solver", solver, "wave-speed strategy");
  run_cmd->add_option("--integrator", integrator, "euler, rk2, rk3, ab2, ab3, muscl-hancock");
  run_cmd->add_option("--limiter", limiter, "minmod, mc, vanleer");
  run_cmd->add_option("--order", order, "spatial order (1 or 2)");
  run_cmd->add_option("--cfl", cfl, "base CFL number");
  run_cmd->add_option("--method-factor", method_factor, "CFL multiplier (default per integrator)");
  run_cmd->add_option("--tend", t_end, "final time");
  run_cmd->add_option("--phi", phi, "Mach cut-off of the low-Mach strategies");
  run_cmd->add_option("--mach", mach, "Mach number");
  run_cmd->add_option("--noise", noise, "noise amplitude");
  run_cmd->add_option("--seed", seed, "noise seed");
  run_cmd->add_option("--ni", ni, "cells in i");
  run_cmd->add_option("--nj", nj, "cells in j");
  run_cmd->add_option("--cadence", cadence, "snapshot interval");
  run_cmd->add_option("--threads", threads, "worker threads");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_flag("--vtk", vtk, "also write legacy VTK snapshots");
  run_cmd->add_option("--set", sets, "generic override section.key=value")->take_all();

  auto* list_cmd = app.add_subcommand("list-cases", "List registered cases");

  auto* stab_cmd = app.add_subcommand("stability", "Stability boundaries / root loci as CSV");
  std::string stab_method = "all", stab_out;
  int stab_n = 720;
  stab_cmd->add_option("--method", stab_method, "euler, heun2, heun3, rk4, ab1..ab5 or all");
  stab_cmd->add_option("--n", stab_n, "samples on the unit circle");
  stab_cmd->add_option("--out", stab_out, "output CSV (default stdout)");

  auto* spec_cmd = app.add_subcommand("spectrum", "Semi-discrete advection spectrum as CSV");
  double spec_eps = 1.0;
  int spec_n = 64;
  std::string spec_out;
  spec_cmd->add_option("--eps", spec_eps, "upwind fraction (1 upwind, 0 central)");
  spec_cmd->add_option("--n", spec_n, "number of cells");
  spec_cmd->add_option("--out", spec_out, "output CSV (default stdout)");

  auto* cfl_cmd = app.add_subcommand("maxcfl", "Largest stable dt on the advection spectrum hull");
  std::string cfl_method = "all";
  double cfl_eps = 1.0;
  int cfl_n = 64;
  cfl_cmd->add_option("--method", cfl_method, "euler, heun2, heun3, rk4, ab1..ab5 or all");
  cfl_cmd->add_option("--eps", cfl_eps, "upwind fraction");
  cfl_cmd->add_option("--n", cfl_n, "number of cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*run_cmd) {
      if (config_path.empty() && case_name.empty())
        throw ConfigError("run needs --config or --case");
      CaseConfig cfg = config_path.empty() ? find_case(case_name).defaults()
                                           : load_config(config_path, case_name);
      const auto num = [](double v) {
        char buf[32];
        return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
      };
      std::vector<std::pair<std::string, std::string>> ov;
      if (!solver.empty()) ov.emplace_back("solver.name", solver);
      if (!integrator.empty()) ov.emplace_back("time.integrator", integrator);
      if (!limiter.empty()) ov.emplace_back("scheme.limiter", limiter);
      if (order) ov.emplace_back("scheme.order", std::to_string(*order));
      if (cfl) ov.emplace_back("time.cfl", num(*cfl));
      if (method_factor) ov.emplace_back("time.method_factor", num(*method_factor));
      if (t_end) ov.emplace_back("case.t_end", num(*t_end));
      if (phi) ov.emplace_back("solver.phi", num(*phi));
      if (mach) ov.emplace_back("case.mach", num(*mach));
      if (noise) ov.emplace_back("case.noise_amplitude", num(*noise));
      if (seed) ov.emplace_back("case.noise_seed", std::to_string(*seed));
      if (ni) ov.emplace_back("grid.ni", std::to_string(*ni));
      if (nj) ov.emplace_back("grid.nj", std::to_string(*nj));
      if (cadence) ov.emplace_back("output.cadence", num(*cadence));
      if (threads) ov.emplace_back("output.threads", std::to_string(*threads));
      if (!out_dir.empty()) ov.emplace_back("output.dir", out_dir);
      if (vtk) ov.emplace_back("output.vtk", "true");
      for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects section.key=value");
        ov.emplace_back(s.substr(0, eq), s.substr(eq + 1));
      }
      for (const auto& [k, v] : ov) set_option(cfg, k, v);

      const RunResult r = run(cfg);
      switch (r.status) {
        case ExitStatus::Clean:
          std::printf("completed %s: t = %.6f after %zu steps%s\n", cfg.case_name.c_str(),
                      r.final_time, r.steps, r.steady ? " (steady)" : "");
          break;
        case ExitStatus::Breakdown:
          std::fprintf(stderr, "breakdown at t = %.9g, step %zu, stage %d (%s): %s\n",
                       r.failure->time, r.failure->step, r.failure->stage, r.failure->kind.c_str(),
                       r.message.c_str());
          break;
        case ExitStatus::ConfigError:
          std::fprintf(stderr, "config error: %s\n", r.message.c_str());
          break;
      }
      return static_cast<int>(r.status);
    }
    if (*list_cmd) {
      for (const auto& c : case_registry()) std::printf("%-18s %s\n", c.name.c_str(), c.description.c_str());
      return 0;
    }
    if (*stab_cmd) {
      Output o;
      std::ostream& out = o.stream(stab_out);
      out << "kind,method,re,im\n";
      for (const auto& m : curve_methods(stab_method)) {
        if (m.tableau) write_curve(out, rk_region_boundary(*m.tableau, stab_n), m.name);
        else write_curve(out, ab_root_locus(*m.polys, stab_n), m.name);
      }
      return 0;
    }
    if (*spec_cmd) {
      Output o;
      std::ostream& out = o.stream(spec_out);
      out << "kind,method,re,im\n";
      char label[48];
      std::snprintf(label, sizeof label, "advection_eps%g", spec_eps);
      write_curve(out, advection_spectrum(spec_n, spec_eps), label);
      return 0;
    }
    if (*cfl_cmd) {
      const StabilityCurve spectrum = advection_spectrum(cfl_n, cfl_eps);
      std::printf("method,eps,max_dt\n");
      for (const auto& m : curve_methods(cfl_method)) {
        const double dt = m.tableau ? max_stable_dt(*m.tableau, spectrum) : max_stable_dt(*m.polys, spectrum);
        std::printf("%s,%g,%.10g\n", m.name.c_str(), cfl_eps, dt);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigExit;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kConfigExit;
  }
  return 0;
}
