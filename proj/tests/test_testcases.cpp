#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "allmach/cases.hpp"
#include "allmach/config.hpp"
#include "allmach/simulation.hpp"
#include "allmach/snapshot.hpp"

using namespace allmach;
namespace fs = std::filesystem;

namespace {

CaseConfig defaults(const std::string& name) { return find_case(name).defaults(); }

double max_speed(const std::vector<PrimitiveState>& cells) {
  double m = 0.0;
  for (const auto& w : cells) m = std::max(m, std::hypot(w.u, w.v));
  return m;
}

double max_diff(const std::vector<PrimitiveState>& a, const std::vector<PrimitiveState>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max({m, std::abs(a[k].rho - b[k].rho), std::abs(a[k].u - b[k].u), std::abs(a[k].v - b[k].v),
                  std::abs(a[k].p - b[k].p)});
  return m;
}

fs::path scratch_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("allmach_test_" + tag);
  fs::remove_all(p);
  return p;
}

FieldSnapshot cartesian_snapshot(int ni, int nj, PrimitiveState w) {
  auto g = std::make_shared<StructuredGrid>(build_cartesian(ni, nj, {0, 1}, {0, 1}));
  return {0.0, g, std::vector<PrimitiveState>(g->cell_count(), w)};
}

}  // namespace

TEST_CASE("registry") {
  std::vector<std::string> names;
  for (const auto& c : case_registry()) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"uniform_low_mach", "cylinder", "blunt_body", "rmi", "khi", "riemann"});
  CHECK_THROWS_AS(find_case("elling"), ConfigError);
}

TEST_CASE("uniform low-Mach case") {
  const auto cfg = defaults("uniform_low_mach");
  CHECK(cfg.mach == 1.0 / 20.0);
  CHECK(cfg.noise_amplitude == 1e-6);
  CHECK(cfg.t_end == 5.0);
  CHECK(cfg.grid.ni == 128);
  CHECK(cfg.grid.nj == 32);
  CHECK(cfg.strategy.kind == WaveSpeedKind::Fleischmann);
  CHECK(cfg.strategy.phi == 5.0);
  CHECK(cfg.integrator == IntegratorKind::AB3);

  auto clean = cfg;
  clean.noise_amplitude = 0.0;
  const auto setup = build_case(clean);
  for (const auto& w : setup.initial) {
    CHECK(w.rho == 1.0);
    CHECK(w.u == 1.0);
    CHECK(w.v == 0.0);
    CHECK(w.p == doctest::Approx(285.7142857142857).epsilon(1e-15));
  }
  CHECK(sound_speed(setup.initial[0], clean.gas) == doctest::Approx(20.0).epsilon(1e-14));
  const auto r = compute_residual(setup.initial, setup.grid, clean.scheme, clean.strategy, clean.gas);
  for (const auto& x : r) CHECK((x.rho == 0.0 && x.mx == 0.0 && x.my == 0.0 && x.E == 0.0));

  const auto noisy = build_case(cfg);
  double m = 0.0;
  for (std::size_t k = 0; k < noisy.initial.size(); ++k) {
    const double d = std::abs(noisy.initial[k].rho - 1.0);
    CHECK(d <= 1e-6);
    CHECK(std::abs(noisy.initial[k].p - setup.initial[k].p) <= 1e-6 * (1 + 1e-9));
    m = std::max(m, d);
  }
  CHECK(m > 0.9e-6);
  auto other = cfg;
  other.noise_seed = 2;
  CHECK(build_case(other).initial[0].rho != noisy.initial[0].rho);
  CHECK(build_case(cfg).initial[7].u == noisy.initial[7].u);
}

TEST_CASE("cell noise") {
  double lo = 1, hi = -1, mean = 0;
  const int n = 40000;
  for (int k = 0; k < n; ++k) {
    const double x = cell_noise(9, k, k % 4, 1.0);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    mean += x / n;
  }
  CHECK(lo >= -1.0);
  CHECK(hi <= 1.0);
  CHECK(lo < -0.999);
  CHECK(hi > 0.999);
  CHECK(std::abs(mean) < 0.02);
  CHECK(cell_noise(9, 3, 1, 0.0) == 0.0);
}

TEST_CASE("cylinder case") {
  const auto cfg = defaults("cylinder");
  CHECK(cfg.grid.type == GridSpec::Type::Annulus);
  CHECK(cfg.grid.a_min == 1.0);
  CHECK(cfg.grid.a_max == 5.0);
  CHECK(cfg.grid.ni == 100);
  CHECK(cfg.grid.nj == 160);
  CHECK(cfg.scheme.order == 1);
  const auto setup = build_case(cfg);
  CHECK(setup.grid.bc(Side::IMin).type == BoundaryKind::Type::Wall);
  CHECK(setup.grid.bc(Side::IMax).type == BoundaryKind::Type::DirichletState);
  CHECK(setup.grid.bc(Side::JMin).type == BoundaryKind::Type::Periodic);
  for (const auto& w : setup.initial) {
    CHECK(w.rho == 1.0);
    CHECK(w.p == 1.0);
    CHECK(w.v == 0.0);
    CHECK(w.u == doctest::Approx(0.1183215957).epsilon(1e-9));
  }

  SUBCASE("rest state stays at rest for every strategy") {
    auto rest = cfg;
    rest.mach = 0.0;
    rest.grid.ni = 12;
    rest.grid.nj = 24;
    for (auto k : all_strategy_kinds()) {
      rest.strategy.kind = k;
      Simulation sim(rest);
      for (int s = 0; s < 100; ++s) sim.step(sim.stable_dt());
      CHECK(max_speed(sim.primitive()) <= 1e-12);
    }
  }
}

TEST_CASE("rest state on a walled box stays at rest") {
  auto cfg = defaults("rmi");
  cfg.grid.ni = 16;
  cfg.grid.nj = 12;
  for (auto k : all_strategy_kinds()) {
    cfg.strategy.kind = k;
    CaseSetup setup{build_grid(cfg.grid), {}};
    for (Side s : {Side::IMin, Side::IMax, Side::JMin, Side::JMax}) setup.grid.set_bc(s, BoundaryKind::wall());
    setup.initial.assign(setup.grid.cell_count(), {1.3, 0.0, 0.0, 0.7});
    Simulation sim(cfg, std::move(setup));
    for (int s = 0; s < 100; ++s) sim.step(sim.stable_dt());
    CHECK(max_speed(sim.primitive()) <= 1e-12);
  }
}

TEST_CASE("blunt body case") {
  const auto cfg = defaults("blunt_body");
  CHECK(cfg.grid.ni == 150);
  CHECK(cfg.grid.nj == 800);
  CHECK(cfg.grid.a_min == 1.0);
  CHECK(cfg.grid.a_max == 2.0);
  CHECK(cfg.grid.b_min == doctest::Approx(2 * std::numbers::pi / 3));
  CHECK(cfg.grid.b_max == doctest::Approx(4 * std::numbers::pi / 3));
  auto small = cfg;
  small.grid.ni = 10;
  small.grid.nj = 40;
  const auto setup = build_case(small);
  CHECK(setup.grid.bc(Side::IMin).type == BoundaryKind::Type::Wall);
  for (const auto& w : setup.initial) {
    CHECK(std::hypot(w.u, w.v) == doctest::Approx(23.664319132398465).epsilon(1e-14));
    CHECK(w.rho == 1.0);
    CHECK(w.p == 1.0);
  }
  const FieldSnapshot snap{0.0, std::make_shared<StructuredGrid>(setup.grid), setup.initial};
  CHECK(asymmetry_metric(snap) == 0.0);
}

TEST_CASE("RMI case") {
  const auto cfg = defaults("rmi");
  CHECK(cfg.grid.ni == 600);
  CHECK(cfg.grid.nj == 396);
  CHECK(cfg.params.at("strip_pressure") == 4.9);
  CHECK(cfg.params.at("strip_density") == 4.22);
  CHECK(cfg.params.at("density_left") == 1.0);
  CHECK(cfg.params.at("density_right") == 0.25);
  const auto setup = build_case(cfg);
  CHECK(setup.grid.bc(Side::JMin).type == BoundaryKind::Type::Wall);
  CHECK(setup.grid.bc(Side::IMax).type == BoundaryKind::Type::Extrapolation);
  const auto at = [&](double x, double y) {
    return setup.initial[setup.grid.cell_index(static_cast<int>(x / 0.05), static_cast<int>(y / 0.05))];
  };
  CHECK(at(4.0, 5.0).p == 4.9);
  CHECK(at(4.0, 5.0).rho == 4.22);
  CHECK(at(1.0, 5.0).rho == 1.0);
  CHECK(at(1.0, 5.0).p == 1.0);
  CHECK(at(20.0, 5.0).rho == 0.25);
  CHECK(at(12.5, 4.95).rho == 1.0);    // interface at 13 for y = 19.8/4
  CHECK(at(12.5, 14.85).rho == 0.25);  // interface at 11 for y = 3*19.8/4
  CHECK(max_speed(setup.initial) == 0.0);
}

TEST_CASE("KHI case") {
  auto cfg = defaults("khi");
  CHECK(cfg.t_end == 4.0);
  cfg.grid.ni = 32;
  cfg.grid.nj = 32;
  SUBCASE("parallel shear flow is steady") {
    cfg.params["perturbation"] = 0.0;
    cfg.scheme.order = 1;
    for (auto s : {WaveSpeedStrategy::roe(), WaveSpeedStrategy::fleischmann(5.0)}) {
      cfg.strategy = s;
      const auto setup = build_case(cfg);
      const auto r = compute_residual(setup.initial, setup.grid, cfg.scheme, cfg.strategy, cfg.gas);
      for (const auto& x : r) CHECK(std::max({std::abs(x.rho), std::abs(x.mx), std::abs(x.my), std::abs(x.E)}) <= 1e-12);
    }
  }
  SUBCASE("perturbation sign flip mirrors the solution") {
    cfg.t_end = 0.05;
    auto flipped = cfg;
    flipped.params["perturbation"] = -cfg.params.at("perturbation");
    Simulation a(cfg), b(flipped);
    a.advance_to(0.05);
    b.advance_to(0.05);
    REQUIRE(a.steps() == b.steps());
    const int ni = cfg.grid.ni, nj = cfg.grid.nj;
    double m = 0.0;
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < ni; ++i) {
        const auto& wa = a.primitive()[j * ni + i];
        const auto& wb = b.primitive()[(nj - 1 - j) * ni + i];
        m = std::max({m, std::abs(wa.rho - wb.rho), std::abs(wa.u - wb.u), std::abs(wa.v + wb.v),
                      std::abs(wa.p - wb.p)});
      }
    CHECK(m <= 1e-10);
  }
}

TEST_CASE("uniform flow is preserved by every integrator") {
  auto cfg = defaults("uniform_low_mach");
  cfg.noise_amplitude = 0.0;
  cfg.grid.ni = 16;
  cfg.grid.nj = 4;
  for (auto k : {IntegratorKind::Euler, IntegratorKind::RK2, IntegratorKind::RK3, IntegratorKind::AB2,
                 IntegratorKind::AB3, IntegratorKind::MusclHancock}) {
    cfg.integrator = k;
    cfg.scheme.order = k == IntegratorKind::MusclHancock ? 2 : 1;
    cfg.scheme.hancock = k == IntegratorKind::MusclHancock;
    Simulation sim(cfg);
    const auto init = sim.primitive();
    for (int s = 0; s < 10; ++s) sim.step(sim.stable_dt());
    CHECK(max_diff(sim.primitive(), init) <= 1e-12);
  }
}

TEST_CASE("determinism") {
  auto cfg = defaults("khi");
  cfg.grid.ni = 24;
  cfg.grid.nj = 24;
  Simulation a(cfg), b(cfg);
  a.advance_to(0.1);
  b.advance_to(0.1);
  CHECK(a.conserved() == b.conserved());
  cfg.threads = 4;
  Simulation c(cfg);
  c.advance_to(0.1);
  CHECK(max_diff(a.primitive(), c.primitive()) <= 1e-14);
}

TEST_CASE("config round trip") {
  for (const auto& info : case_registry()) {
    auto cfg = info.defaults();
    CHECK(parse_config(serialize_config(cfg)) == cfg);
    cfg.cfl = 0.1 + 0.2;
    cfg.t_end = std::nextafter(1.0 / 3.0, 1.0);
    cfg.noise_seed = 0xFFFFFFFFFFFFFFFFULL;
    cfg.strategy = WaveSpeedStrategy::geom_blend(3.0);
    cfg.output_dir = "out dir";
    CHECK(parse_config(serialize_config(cfg)) == cfg);
  }
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config(
      "# comment\n[case]\nname = cylinder\nmach = 0.01  # trailing\n[solver]\nname = roe\n"
      "[time]\nintegrator = rk3\n[params]\n");
  CHECK(cfg.case_name == "cylinder");
  CHECK(cfg.mach == 0.01);
  CHECK(cfg.strategy.kind == WaveSpeedKind::RoeStandard);
  CHECK(cfg.integrator == IntegratorKind::RK3);
  CHECK(cfg.grid.nj == 160);

  const auto hancock = parse_config("[time]\nintegrator = muscl-hancock\n", "rmi");
  CHECK(hancock.scheme.hancock);
  CHECK(hancock.scheme.order == 2);

  CHECK_THROWS_AS(parse_config("[solver]\nname = hllc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("name = roe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[solver]\nname roe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[solver]\nname = roe\nname = roe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[time]\ncfl = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[time]\ncfl = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nwidth = 3\n"), ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("[params]\nbogus = 3\n", "rmi")), ConfigError);
  CHECK_THROWS_AS(parse_config("[case]\nnoise_seed = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[case]\nname = elling\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[solver\n"), ConfigError);
}

TEST_CASE("run driver") {
  SUBCASE("invalid config writes nothing") {
    auto cfg = defaults("uniform_low_mach");
    cfg.t_end = -1.0;
    const auto dir = scratch_dir("invalid");
    cfg.output_dir = dir.string();
    const auto r = run(cfg);
    CHECK(r.status == ExitStatus::ConfigError);
    CHECK_FALSE(fs::exists(dir));
  }
  SUBCASE("clean run writes snapshots at the cadence") {
    auto cfg = defaults("uniform_low_mach");
    cfg.grid.ni = 16;
    cfg.grid.nj = 4;
    cfg.t_end = 0.01;
    cfg.cadence = 0.004;
    const auto dir = scratch_dir("clean");
    cfg.output_dir = dir.string();
    const auto r = run(cfg);
    CHECK(r.status == ExitStatus::Clean);
    CHECK(r.final_time == 0.01);
    for (double t : {0.0, 0.004, 0.008, 0.01})
      CHECK(fs::exists(dir / snapshot_file_name("uniform_low_mach", t)));
    CHECK(fs::exists(dir / "run_log.csv"));
    CHECK(fs::exists(dir / "config.ini"));
    CHECK(load_config((dir / "config.ini").string()) == cfg);
    std::vector<Point2> centers;
    const auto cells = read_snapshot_csv((dir / snapshot_file_name("uniform_low_mach", 0.01)).string(), &centers);
    CHECK(cells.size() == 64);
    CHECK(centers[1].x == doctest::Approx(3.0 / 32));
    fs::remove_all(dir);
  }
}

TEST_CASE("slice scatter") {
  auto snap = cartesian_snapshot(5, 3, {1, 0, 0, 1});
  auto rows = slice_scatter(snap);
  CHECK(rows.size() == 15);
  for (const auto& r : rows) CHECK(r.value == 1.0);
  CHECK(rows[6].slice == 1);
  CHECK(rows[6].x == doctest::Approx(0.3));
  snap.cells[snap.grid->cell_index(2, 1)].rho = 1.5;
  rows = slice_scatter(snap);
  CHECK(std::count_if(rows.begin(), rows.end(), [](const SliceRow& r) { return r.value != 1.0; }) == 1);
  CHECK(rows[7].value == 1.5);
  CHECK(slice_scatter(snap, FieldVariable::Pressure)[7].value == 1.0);
}

TEST_CASE("asymmetry metric") {
  auto snap = cartesian_snapshot(4, 6, {2, 0, 0, 1});
  CHECK(asymmetry_metric(snap, MirrorAxis::J, 2.0) == 0.0);
  snap.cells[snap.grid->cell_index(1, 1)].rho += 0.2;
  CHECK(asymmetry_metric(snap, MirrorAxis::J, 2.0) == doctest::Approx(0.1));
  auto swapped = cartesian_snapshot(4, 6, {2, 0, 0, 1});
  swapped.cells[swapped.grid->cell_index(1, 4)].rho += 0.2;
  CHECK(asymmetry_metric(swapped, MirrorAxis::J, 2.0) == asymmetry_metric(snap, MirrorAxis::J, 2.0));
  CHECK(asymmetry_metric(snap, MirrorAxis::I, 2.0) == doctest::Approx(0.1));
  FieldSnapshot bad = snap;
  bad.cells.pop_back();
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}

TEST_CASE("snapshot files") {
  CHECK(snapshot_file_name("rmi", 85.0) == "snap_rmi_85.000000.csv");
  CHECK(snapshot_file_name("khi", 0.5) == "snap_khi_0.500000.csv");
  auto snap = cartesian_snapshot(3, 2, {1, 0, 0, 1});
  snap.cells[2] = {1.0 / 3.0, -0.1, 1e-300, 12345.678901234567};
  const auto dir = scratch_dir("snap");
  fs::create_directories(dir);
  write_snapshot_csv(snap, (dir / "a.csv").string());
  write_snapshot_vtk(snap, (dir / "a.vtk").string());
  const auto back = read_snapshot_csv((dir / "a.csv").string());
  REQUIRE(back.size() == snap.cells.size());
  CHECK(max_diff(back, snap.cells) == 0.0);
  CHECK(fs::file_size(dir / "a.vtk") > 0);
  fs::remove_all(dir);
}
