#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "allmach/euler_state.hpp"
#include "allmach/riemann_solvers.hpp"
#include "allmach/spatial_scheme.hpp"
#include "allmach/time_integrators.hpp"

namespace allmach {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  enum class Type { Cartesian, Annulus };
  Type type = Type::Cartesian;
  int ni = 1;
  int nj = 1;
  // Cartesian: x range / y range. Annulus: radii / angle range (radians).
  double a_min = 0.0, a_max = 1.0;
  double b_min = 0.0, b_max = 1.0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct CaseConfig {
  std::string case_name = "uniform_low_mach";
  GridSpec grid{};
  GasModel gas{};
  WaveSpeedStrategy strategy = WaveSpeedStrategy::fleischmann();
  IntegratorKind integrator = IntegratorKind::AB3;
  SchemeConfig scheme{};
  double cfl = 0.45;
  /// Negative means: use default_method_factor(integrator).
  double method_factor = -1.0;
  double t_end = 1.0;
  double noise_amplitude = 0.0;
  std::uint64_t noise_seed = 1;
  double mach = 0.0;
  /// Optional early stop once max |dq/dt| (relative) falls below this; 0 = off.
  double steady_tol = 0.0;
  /// Case-specific numeric parameters; the allowed keys are fixed by the case.
  std::map<std::string, double> params;
  std::string output_dir;
  /// Time between snapshots; the final time is always written.
  double cadence = 1.0;
  bool write_vtk = false;
  int threads = 1;

  double effective_method_factor() const {
    return method_factor > 0.0 ? method_factor : default_method_factor(integrator);
  }

  friend bool operator==(const CaseConfig&, const CaseConfig&) = default;
};

/// Ordered `section.key` -> value pairs from an INI-style text:
/// `[section]` headers, `key = value` lines, `#` comments, case-sensitive.
std::vector<std::pair<std::string, std::string>> parse_ini(const std::string& text);

/// Applies one `section.key = value` setting; throws ConfigError.
void set_option(CaseConfig& cfg, const std::string& key, const std::string& value);

/// Starts from the registered defaults of the case named in the text (or
/// `case_override` when non-empty) and applies every setting in order.
CaseConfig parse_config(const std::string& text, const std::string& case_override = {});
CaseConfig load_config(const std::string& path, const std::string& case_override = {});

std::string serialize_config(const CaseConfig& cfg);

/// Checks invariants and registry names; throws ConfigError.
void validate_config(const CaseConfig& cfg);

}  // namespace allmach
