#include "allmach/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "allmach/cases.hpp"

namespace allmach {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError("'" + key + "': expected a number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError("'" + key + "': expected an integer, got '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const long long v = to_integer(key, text);
  if (v < -(1LL << 31) || v > (1LL << 31) - 1) throw ConfigError("'" + key + "': out of range");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("'" + key + "': expected a boolean, got '" + text + "'");
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class F>
auto wrap_invalid(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_ini(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // a '#' at line start or after whitespace opens a comment
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (line[k] == '#' && (k == 0 || line[k - 1] == ' ' || line[k - 1] == '\t')) {
        line.resize(k);
        break;
      }
    }
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(where + "unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (section.empty()) throw ConfigError(where + "empty section name");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (section.empty()) throw ConfigError(where + "key outside of any section");
    std::string full = section + "." + key;
    if (!seen.insert(full).second) throw ConfigError(where + "duplicate key '" + full + "'");
    out.emplace_back(std::move(full), value);
  }
  return out;
}

void set_option(CaseConfig& cfg, const std::string& key, const std::string& value) {
  const std::string& v = value;
  if (key == "case.name") {
    cfg.case_name = v;
  } else if (key == "case.t_end") {
    cfg.t_end = to_double(key, v);
  } else if (key == "case.mach") {
    cfg.mach = to_double(key, v);
  } else if (key == "case.noise_amplitude") {
    cfg.noise_amplitude = to_double(key, v);
  } else if (key == "case.noise_seed") {
    std::uint64_t s = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, s);
    if (ec != std::errc() || ptr != end || v.empty())
      throw ConfigError("'case.noise_seed': expected a non-negative integer, got '" + v + "'");
    cfg.noise_seed = s;
  } else if (key == "case.steady_tol") {
    cfg.steady_tol = to_double(key, v);
  } else if (key == "grid.type") {
    if (v == "cartesian") cfg.grid.type = GridSpec::Type::Cartesian;
    else if (v == "annulus") cfg.grid.type = GridSpec::Type::Annulus;
    else throw ConfigError("'grid.type' must be cartesian or annulus");
  } else if (key == "grid.ni") {
    cfg.grid.ni = to_int(key, v);
  } else if (key == "grid.nj") {
    cfg.grid.nj = to_int(key, v);
  } else if (key == "grid.x_min" || key == "grid.r_inner") {
    cfg.grid.a_min = to_double(key, v);
  } else if (key == "grid.x_max" || key == "grid.r_outer") {
    cfg.grid.a_max = to_double(key, v);
  } else if (key == "grid.y_min" || key == "grid.theta_min") {
    cfg.grid.b_min = to_double(key, v);
  } else if (key == "grid.y_max" || key == "grid.theta_max") {
    cfg.grid.b_max = to_double(key, v);
  } else if (key == "gas.gamma") {
    cfg.gas.gamma = to_double(key, v);
  } else if (key == "solver.name") {
    cfg.strategy.kind = wrap_invalid([&] { return parse_strategy_kind(v); });
  } else if (key == "solver.phi") {
    cfg.strategy.phi = to_double(key, v);
  } else if (key == "solver.delta_rel") {
    cfg.strategy.delta_rel = to_double(key, v);
  } else if (key == "solver.beta_source") {
    if (v == "pressure-sensor") cfg.strategy.beta.kind = BetaSource::Kind::PressureSensor;
    else if (v == "constant") cfg.strategy.beta.kind = BetaSource::Kind::Constant;
    else throw ConfigError("'solver.beta_source' must be pressure-sensor or constant");
  } else if (key == "solver.beta_value") {
    cfg.strategy.beta.value = to_double(key, v);
  } else if (key == "scheme.order") {
    cfg.scheme.order = to_int(key, v);
  } else if (key == "scheme.limiter") {
    cfg.scheme.limiter = wrap_invalid([&] { return parse_limiter(v); });
  } else if (key == "time.integrator") {
    cfg.integrator = wrap_invalid([&] { return parse_integrator(v); });
    cfg.scheme.hancock = cfg.integrator == IntegratorKind::MusclHancock;
    if (cfg.scheme.hancock) cfg.scheme.order = 2;
  } else if (key == "time.cfl") {
    cfg.cfl = to_double(key, v);
  } else if (key == "time.method_factor") {
    cfg.method_factor = v == "auto" ? -1.0 : to_double(key, v);
  } else if (key == "output.dir") {
    cfg.output_dir = v;
  } else if (key == "output.cadence") {
    cfg.cadence = to_double(key, v);
  } else if (key == "output.vtk") {
    cfg.write_vtk = to_bool(key, v);
  } else if (key == "output.threads") {
    cfg.threads = to_int(key, v);
  } else if (key.starts_with("params.") && key.size() > 7) {
    cfg.params[key.substr(7)] = to_double(key, v);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

CaseConfig parse_config(const std::string& text, const std::string& case_override) {
  const auto entries = parse_ini(text);
  std::string name = case_override;
  if (name.empty())
    for (const auto& [k, v] : entries)
      if (k == "case.name") name = v;
  if (name.empty()) throw ConfigError("no case name given");
  CaseConfig cfg = find_case(name).defaults();
  for (const auto& [k, v] : entries)
    if (k != "case.name") set_option(cfg, k, v);
  cfg.case_name = name;
  return cfg;
}

CaseConfig load_config(const std::string& path, const std::string& case_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), case_override);
}

std::string serialize_config(const CaseConfig& cfg) {
  std::ostringstream o;
  const bool cart = cfg.grid.type == GridSpec::Type::Cartesian;
  o << "[case]\n"
    << "name = " << cfg.case_name << "\n"
    << "t_end = " << fmt(cfg.t_end) << "\n"
    << "mach = " << fmt(cfg.mach) << "\n"
    << "noise_amplitude = " << fmt(cfg.noise_amplitude) << "\n"
    << "noise_seed = " << cfg.noise_seed << "\n"
    << "steady_tol = " << fmt(cfg.steady_tol) << "\n\n";
  o << "[grid]\n"
    << "type = " << (cart ? "cartesian" : "annulus") << "\n"
    << "ni = " << cfg.grid.ni << "\n"
    << "nj = " << cfg.grid.nj << "\n"
    << (cart ? "x_min = " : "r_inner = ") << fmt(cfg.grid.a_min) << "\n"
    << (cart ? "x_max = " : "r_outer = ") << fmt(cfg.grid.a_max) << "\n"
    << (cart ? "y_min = " : "theta_min = ") << fmt(cfg.grid.b_min) << "\n"
    << (cart ? "y_max = " : "theta_max = ") << fmt(cfg.grid.b_max) << "\n\n";
  o << "[gas]\n"
    << "gamma = " << fmt(cfg.gas.gamma) << "\n\n";
  o << "[solver]\n"
    << "name = " << strategy_name(cfg.strategy.kind) << "\n"
    << "phi = " << fmt(cfg.strategy.phi) << "\n"
    << "delta_rel = " << fmt(cfg.strategy.delta_rel) << "\n"
    << "beta_source = "
    << (cfg.strategy.beta.kind == BetaSource::Kind::Constant ? "constant" : "pressure-sensor")
    << "\n"
    << "beta_value = " << fmt(cfg.strategy.beta.value) << "\n\n";
  o << "[scheme]\n"
    << "order = " << cfg.scheme.order << "\n"
    << "limiter = " << limiter_name(cfg.scheme.limiter) << "\n\n";
  o << "[time]\n"
    << "integrator = " << integrator_name(cfg.integrator) << "\n"
    << "cfl = " << fmt(cfg.cfl) << "\n"
    << "method_factor = " << (cfg.method_factor > 0.0 ? fmt(cfg.method_factor) : "auto")
    << "\n\n";
  o << "[output]\n"
    << "dir = " << cfg.output_dir << "\n"
    << "cadence = " << fmt(cfg.cadence) << "\n"
    << "vtk = " << (cfg.write_vtk ? "true" : "false") << "\n"
    << "threads = " << cfg.threads << "\n";
  if (!cfg.params.empty()) {
    o << "\n[params]\n";
    for (const auto& [k, v] : cfg.params) o << k << " = " << fmt(v) << "\n";
  }
  return o.str();
}

void validate_config(const CaseConfig& cfg) {
  const CaseInfo& info = find_case(cfg.case_name);
  const CaseConfig defaults = info.defaults();
  for (const auto& [k, v] : cfg.params)
    if (!defaults.params.contains(k))
      throw ConfigError("case '" + cfg.case_name + "' has no parameter '" + k + "'");
  if (cfg.grid.ni < 1 || cfg.grid.nj < 1) throw ConfigError("grid dimensions must be positive");
  if (!(cfg.grid.a_max > cfg.grid.a_min) || !(cfg.grid.b_max > cfg.grid.b_min))
    throw ConfigError("grid ranges must be increasing");
  if (cfg.grid.type == GridSpec::Type::Annulus && !(cfg.grid.a_min > 0.0))
    throw ConfigError("annulus inner radius must be positive");
  if (!(cfg.gas.gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (!(cfg.cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(cfg.cadence > 0.0)) throw ConfigError("output cadence must be positive");
  if (cfg.noise_amplitude < 0.0) throw ConfigError("noise amplitude must be non-negative");
  if (cfg.steady_tol < 0.0) throw ConfigError("steady_tol must be non-negative");
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
  if (cfg.scheme.hancock != (cfg.integrator == IntegratorKind::MusclHancock))
    throw ConfigError("the Hancock predictor is tied to the muscl-hancock integrator");
  wrap_invalid([&] {
    cfg.strategy.validate();
    cfg.scheme.validate();
    return 0;
  });
}

}  // namespace allmach
