#include "allmach/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace allmach {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double param(const CaseConfig& cfg, const std::string& name) {
  const auto it = cfg.params.find(name);
  if (it == cfg.params.end()) throw ConfigError("missing case parameter '" + name + "'");
  return it->second;
}

void add_noise(const CaseConfig& cfg, std::vector<PrimitiveState>& cells) {
  if (cfg.noise_amplitude == 0.0) return;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    cells[k].rho += cell_noise(cfg.noise_seed, k, 0, cfg.noise_amplitude);
    cells[k].u += cell_noise(cfg.noise_seed, k, 1, cfg.noise_amplitude);
    cells[k].v += cell_noise(cfg.noise_seed, k, 2, cfg.noise_amplitude);
    cells[k].p += cell_noise(cfg.noise_seed, k, 3, cfg.noise_amplitude);
  }
}

template <class F>
std::vector<PrimitiveState> sample(const StructuredGrid& grid, F&& f) {
  std::vector<PrimitiveState> cells(grid.cell_count());
  for (int j = 0; j < grid.nj(); ++j)
    for (int i = 0; i < grid.ni(); ++i) cells[grid.cell_index(i, j)] = f(grid.center(i, j));
  return cells;
}

// --- uniform low-Mach flow ---------------------------------------------------

CaseConfig uniform_defaults() {
  CaseConfig c;
  c.case_name = "uniform_low_mach";
  c.grid = {GridSpec::Type::Cartesian, 128, 32, 0.0, 1.0, 0.0, 0.25};
  c.strategy = WaveSpeedStrategy::fleischmann(5.0);
  c.integrator = IntegratorKind::AB3;
  c.t_end = 5.0;
  c.cadence = 5.0;
  c.mach = 1.0 / 20.0;
  c.noise_amplitude = 1e-6;
  c.scheme.order = 2;
  return c;
}

CaseSetup uniform_build(const CaseConfig& cfg) {
  if (!(cfg.mach > 0.0)) throw ConfigError("uniform_low_mach requires mach > 0");
  StructuredGrid grid = build_grid(cfg.grid);
  grid.set_bc(Side::IMin, BoundaryKind::extrapolation());
  grid.set_bc(Side::IMax, BoundaryKind::extrapolation());
  grid.set_bc(Side::JMin, BoundaryKind::periodic());
  grid.set_bc(Side::JMax, BoundaryKind::periodic());
  const double p = 1.0 / (cfg.mach * cfg.mach * cfg.gas.gamma);
  auto cells = sample(grid, [&](Point2) { return PrimitiveState{1.0, 1.0, 0.0, p}; });
  add_noise(cfg, cells);
  return {std::move(grid), std::move(cells)};
}

// --- cylinder --------------------------------------------------------------

CaseConfig cylinder_defaults() {
  CaseConfig c;
  c.case_name = "cylinder";
  c.grid = {GridSpec::Type::Annulus, 100, 160, 1.0, 5.0, 0.0, 2.0 * std::numbers::pi};
  c.strategy = WaveSpeedStrategy::fleischmann(5.0);
  c.integrator = IntegratorKind::AB3;
  c.t_end = 50.0;
  c.cadence = 50.0;
  c.mach = 0.1;
  return c;
}

CaseSetup cylinder_build(const CaseConfig& cfg) {
  if (cfg.mach < 0.0) throw ConfigError("cylinder requires mach >= 0");
  if (cfg.grid.type != GridSpec::Type::Annulus) throw ConfigError("cylinder needs an annulus grid");
  StructuredGrid grid = build_grid(cfg.grid);
  const PrimitiveState free{1.0, cfg.mach * std::sqrt(cfg.gas.gamma), 0.0, 1.0};
  grid.set_bc(Side::IMin, BoundaryKind::wall());
  grid.set_bc(Side::IMax, BoundaryKind::dirichlet(free));
  if (grid.bc(Side::JMin).type != BoundaryKind::Type::Periodic) {
    grid.set_bc(Side::JMin, BoundaryKind::extrapolation());
    grid.set_bc(Side::JMax, BoundaryKind::extrapolation());
  }
  auto cells = sample(grid, [&](Point2) { return free; });
  add_noise(cfg, cells);
  return {std::move(grid), std::move(cells)};
}

// --- blunt body ------------------------------------------------------------

CaseConfig blunt_defaults() {
  CaseConfig c;
  c.case_name = "blunt_body";
  c.grid = {GridSpec::Type::Annulus, 150, 800, 1.0, 2.0, 2.0 * std::numbers::pi / 3.0,
            4.0 * std::numbers::pi / 3.0};
  c.strategy = WaveSpeedStrategy::fleischmann(5.0);
  c.integrator = IntegratorKind::AB3;
  c.t_end = 2.0;
  c.cadence = 0.5;
  c.mach = 20.0;
  return c;
}

CaseSetup blunt_build(const CaseConfig& cfg) {
  if (cfg.grid.type != GridSpec::Type::Annulus) throw ConfigError("blunt_body needs an annulus grid");
  StructuredGrid grid = build_grid(cfg.grid);
  // the sector faces -x, so the free stream travels in +x towards the body
  const PrimitiveState free{1.0, cfg.mach * std::sqrt(cfg.gas.gamma), 0.0, 1.0};
  grid.set_bc(Side::IMin, BoundaryKind::wall());
  grid.set_bc(Side::IMax, BoundaryKind::extrapolation());
  grid.set_bc(Side::JMin, BoundaryKind::extrapolation());
  grid.set_bc(Side::JMax, BoundaryKind::extrapolation());
  auto cells = sample(grid, [&](Point2) { return free; });
  add_noise(cfg, cells);
  return {std::move(grid), std::move(cells)};
}

// --- Richtmyer-Meshkov -----------------------------------------------------

CaseConfig rmi_defaults() {
  CaseConfig c;
  c.case_name = "rmi";
  c.grid = {GridSpec::Type::Cartesian, 600, 396, 0.0, 30.0, 0.0, 19.8};
  c.strategy = WaveSpeedStrategy::fleischmann(5.0);
  c.integrator = IntegratorKind::AB3;
  c.scheme.order = 2;
  c.t_end = 85.0;
  c.cadence = 5.0;
  c.params = {{"interface_x0", 12.0},  {"interface_amplitude", 1.0},
              {"interface_wavelength", 19.8}, {"strip_x_min", 2.0},
              {"strip_x_max", 6.0},    {"strip_pressure", 4.9},
              {"strip_density", 4.22}, {"density_left", 1.0},
              {"density_right", 0.25}, {"pressure", 1.0}};
  return c;
}

CaseSetup rmi_build(const CaseConfig& cfg) {
  StructuredGrid grid = build_grid(cfg.grid);
  grid.set_bc(Side::IMin, BoundaryKind::extrapolation());
  grid.set_bc(Side::IMax, BoundaryKind::extrapolation());
  grid.set_bc(Side::JMin, BoundaryKind::wall());
  grid.set_bc(Side::JMax, BoundaryKind::wall());
  const double x0 = param(cfg, "interface_x0"), a = param(cfg, "interface_amplitude");
  const double lambda = param(cfg, "interface_wavelength");
  if (!(lambda > 0.0)) throw ConfigError("interface_wavelength must be positive");
  const double s0 = param(cfg, "strip_x_min"), s1 = param(cfg, "strip_x_max");
  const double ps = param(cfg, "strip_pressure"), rs = param(cfg, "strip_density");
  const double rl = param(cfg, "density_left"), rr = param(cfg, "density_right");
  const double p = param(cfg, "pressure");
  auto cells = sample(grid, [&](Point2 c) {
    if (c.x >= s0 && c.x <= s1) return PrimitiveState{rs, 0.0, 0.0, ps};
    const double xi = x0 + a * std::sin(2.0 * std::numbers::pi * c.y / lambda);
    return PrimitiveState{c.x < xi ? rl : rr, 0.0, 0.0, p};
  });
  add_noise(cfg, cells);
  return {std::move(grid), std::move(cells)};
}

// --- Kelvin-Helmholtz ------------------------------------------------------

CaseConfig khi_defaults() {
  CaseConfig c;
  c.case_name = "khi";
  c.grid = {GridSpec::Type::Cartesian, 128, 128, 0.0, 1.0, 0.0, 1.0};
  c.strategy = WaveSpeedStrategy::fleischmann(5.0);
  c.integrator = IntegratorKind::AB3;
  c.scheme.order = 2;
  c.t_end = 4.0;
  c.cadence = 1.0;
  c.params = {{"shear_velocity", 0.5},      {"density_inner", 2.0},
              {"density_outer", 1.0},       {"layer_width", 0.05},
              {"layer_low", 0.25},          {"layer_high", 0.75},
              {"perturbation", 0.01},       {"perturbation_width", 0.2},
              {"perturbation_wavenumber", 2.0}, {"pressure", 2.5}};
  return c;
}

CaseSetup khi_build(const CaseConfig& cfg) {
  StructuredGrid grid = build_grid(cfg.grid);
  for (Side s : {Side::IMin, Side::IMax, Side::JMin, Side::JMax})
    grid.set_bc(s, BoundaryKind::periodic());
  const double U = param(cfg, "shear_velocity");
  const double r_in = param(cfg, "density_inner"), r_out = param(cfg, "density_outer");
  const double w = param(cfg, "layer_width");
  const double y1 = param(cfg, "layer_low"), y2 = param(cfg, "layer_high");
  const double A = param(cfg, "perturbation"), sigma = param(cfg, "perturbation_width");
  const double k = param(cfg, "perturbation_wavenumber"), p = param(cfg, "pressure");
  if (!(w > 0.0) || !(sigma > 0.0)) throw ConfigError("khi widths must be positive");
  const double lx = cfg.grid.a_max - cfg.grid.a_min;
  auto cells = sample(grid, [&](Point2 c) {
    // profile is 1 inside the band (y1, y2) and 0 outside
    const double band = 0.5 * (std::tanh((c.y - y1) / w) - std::tanh((c.y - y2) / w));
    const double g = std::exp(-(c.y - y1) * (c.y - y1) / (sigma * sigma)) +
                     std::exp(-(c.y - y2) * (c.y - y2) / (sigma * sigma));
    return PrimitiveState{r_out + (r_in - r_out) * band, U * (2.0 * band - 1.0),
                          A * std::sin(k * std::numbers::pi * (c.x - cfg.grid.a_min) / lx) * g, p};
  });
  add_noise(cfg, cells);
  return {std::move(grid), std::move(cells)};
}

// --- two-state Riemann problem ---------------------------------------------

CaseConfig riemann_defaults() {
  CaseConfig c;
  c.case_name = "riemann";
  c.grid = {GridSpec::Type::Cartesian, 100, 1, 0.0, 1.0, 0.0, 0.01};
  c.strategy = WaveSpeedStrategy::roe();
  c.integrator = IntegratorKind::Euler;
  c.cfl = 0.9;
  c.t_end = 0.2;
  c.cadence = 0.2;
  c.params = {{"interface_x0", 0.5},   {"density_left", 1.0},     {"velocity_left", 0.0},
              {"pressure_left", 1.0},  {"density_right", 0.125},  {"velocity_right", 0.0},
              {"pressure_right", 0.1}};
  return c;
}

CaseSetup riemann_build(const CaseConfig& cfg) {
  StructuredGrid grid = build_grid(cfg.grid);
  grid.set_bc(Side::IMin, BoundaryKind::extrapolation());
  grid.set_bc(Side::IMax, BoundaryKind::extrapolation());
  grid.set_bc(Side::JMin, BoundaryKind::periodic());
  grid.set_bc(Side::JMax, BoundaryKind::periodic());
  const double x0 = param(cfg, "interface_x0");
  const PrimitiveState left{param(cfg, "density_left"), param(cfg, "velocity_left"), 0.0,
                            param(cfg, "pressure_left")};
  const PrimitiveState right{param(cfg, "density_right"), param(cfg, "velocity_right"), 0.0,
                             param(cfg, "pressure_right")};
  auto cells = sample(grid, [&](Point2 c) { return c.x < x0 ? left : right; });
  add_noise(cfg, cells);
  return {std::move(grid), std::move(cells)};
}

std::vector<CaseInfo>& registry() {
  static std::vector<CaseInfo> reg{
      {"uniform_low_mach", "perturbed uniform low-Mach channel flow", uniform_defaults,
       uniform_build},
      {"cylinder", "low-Mach flow around a cylinder (annulus)", cylinder_defaults, cylinder_build},
      {"blunt_body", "hypersonic blunt-body flow on an annulus sector", blunt_defaults,
       blunt_build},
      {"rmi", "Richtmyer-Meshkov instability", rmi_defaults, rmi_build},
      {"khi", "Kelvin-Helmholtz instability (double shear layer)", khi_defaults, khi_build},
      {"riemann", "two-state Riemann problem along x (Sod by default)", riemann_defaults,
       riemann_build},
  };
  return reg;
}

}  // namespace

const std::vector<CaseInfo>& case_registry() { return registry(); }

void register_case(CaseInfo info) {
  if (info.name.empty() || !info.defaults || !info.build)
    throw std::invalid_argument("incomplete case registration");
  auto& reg = registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const CaseInfo& c) { return c.name == info.name; });
  if (it != reg.end()) *it = std::move(info);
  else reg.push_back(std::move(info));
}

const CaseInfo& find_case(std::string_view name) {
  for (const auto& c : registry())
    if (c.name == name) return c;
  throw ConfigError("unknown case '" + std::string(name) + "'");
}

StructuredGrid build_grid(const GridSpec& spec) {
  try {
    if (spec.type == GridSpec::Type::Cartesian)
      return build_cartesian(spec.ni, spec.nj, {spec.a_min, spec.a_max}, {spec.b_min, spec.b_max});
    return build_annulus(spec.a_min, spec.a_max, spec.ni, spec.nj, {spec.b_min, spec.b_max});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

double cell_noise(std::uint64_t seed, std::size_t cell, int component, double amplitude) {
  const std::uint64_t h =
      splitmix64(splitmix64(seed) + 4 * static_cast<std::uint64_t>(cell) + static_cast<std::uint64_t>(component));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return amplitude * (2.0 * u - 1.0);
}

CaseSetup build_case(const CaseConfig& cfg) {
  validate_config(cfg);
  CaseSetup setup = find_case(cfg.case_name).build(cfg);
  if (setup.initial.size() != setup.grid.cell_count())
    throw ConfigError("case produced a field of the wrong size");
  for (const auto& w : setup.initial)
    if (!is_valid(w)) throw ConfigError("case produced an unphysical initial state");
  return setup;
}

}  // namespace allmach
