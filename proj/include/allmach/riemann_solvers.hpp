#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "allmach/euler_state.hpp"

namespace allmach {

enum class WaveSpeedKind {
  RoeStandard,
  RoeHarten,
  RoeHlleSpeeds,
  Fleischmann,
  FleischmannLinear,
  GeomBlend,
  ArithBlend,
};

/// Source of the blending weight beta for GeomBlend / ArithBlend.
struct BetaSource {
  enum class Kind { Constant, PressureSensor };
  Kind kind = Kind::PressureSensor;
  /// beta for Constant, kappa for PressureSensor.
  double value = 0.5;

  static BetaSource constant(double beta) { return {Kind::Constant, beta}; }
  static BetaSource pressure_sensor(double kappa) { return {Kind::PressureSensor, kappa}; }

  friend bool operator==(const BetaSource&, const BetaSource&) = default;
};

/// Selects how the signal speeds entering the Roe dissipation are modified.
/// Immutable after construction; `validate()` throws std::invalid_argument
/// on out-of-range parameters.
struct WaveSpeedStrategy {
  WaveSpeedKind kind = WaveSpeedKind::RoeStandard;
  double delta_rel = 0.1;  // Harten width relative to the Roe sound speed
  double phi = 5.0;        // Mach cut-off for the low-Mach variants
  BetaSource beta{};

  static WaveSpeedStrategy roe() { return {}; }
  static WaveSpeedStrategy roe_harten(double delta_rel = 0.1) {
    return {WaveSpeedKind::RoeHarten, delta_rel};
  }
  static WaveSpeedStrategy roe_hlle() { return {WaveSpeedKind::RoeHlleSpeeds}; }
  static WaveSpeedStrategy fleischmann(double phi = 5.0) {
    return {WaveSpeedKind::Fleischmann, 0.1, phi};
  }
  static WaveSpeedStrategy fleischmann_linear(double phi = 5.0) {
    return {WaveSpeedKind::FleischmannLinear, 0.1, phi};
  }
  static WaveSpeedStrategy geom_blend(double phi = 5.0,
                                      BetaSource b = BetaSource::pressure_sensor(0.5)) {
    return {WaveSpeedKind::GeomBlend, 0.1, phi, b};
  }
  static WaveSpeedStrategy arith_blend(double phi = 5.0,
                                       BetaSource b = BetaSource::pressure_sensor(0.5)) {
    return {WaveSpeedKind::ArithBlend, 0.1, phi, b};
  }

  void validate() const;

  friend bool operator==(const WaveSpeedStrategy&, const WaveSpeedStrategy&) = default;
};

/// CLI/config names: roe, roe-harten, roe-hlle, fleischmann,
/// fleischmann-linear, blend-geom, blend-arith.
std::string_view strategy_name(WaveSpeedKind kind);
/// Throws std::invalid_argument for unknown names.
WaveSpeedKind parse_strategy_kind(std::string_view name);
const std::vector<WaveSpeedKind>& all_strategy_kinds();

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Eigen-decomposition of the Roe matrix in the face-normal frame, where
/// the Roe state's u_t is the normal and v_t the tangential velocity.
/// Columns of `right` are the right eigenvectors; rows of `left` are the
/// left eigenvectors. Ordering: u-c, u (entropy), u (shear), u+c.
struct WaveBasis {
  std::array<double, 4> lambdas{};
  Mat4 right{};
  Mat4 left{};
};

struct WaveDecomposition {
  std::array<double, 4> lambdas{};
  Mat4 right_vectors{};
  std::array<double, 4> wave_strengths{};
};

WaveBasis eigensystem(const RoeState& roe, const GasModel& gas);

/// Projects a conserved jump (normal frame) onto the characteristic fields.
WaveDecomposition decompose(const RoeState& roe, const ConservedState& jump,
                            const GasModel& gas);

/// Harten's smoothed absolute value; equals |lambda| outside (-delta, delta).
double harten_abs(double lambda, double delta);

/// Blending weight in [0, 1]; zero for equal pressures.
double shock_beta(const PrimitiveState& left, const PrimitiveState& right,
                  const BetaSource& source);

/// Modified signal speeds. The numerical viscosity on wave k is the
/// absolute value of the returned entry k. States are in the face-normal
/// frame (u normal, v tangential).
std::array<double, 4> effective_speeds(const RoeState& roe, const WaveSpeedStrategy& strategy,
                                       const PrimitiveState& left, const PrimitiveState& right,
                                       const GasModel& gas);

/// Roe-type numerical flux through a face with unit normal (nx, ny),
/// returned in the global frame.
Flux numerical_flux(const PrimitiveState& left, const PrimitiveState& right, double nx,
                    double ny, const WaveSpeedStrategy& strategy, const GasModel& gas);

}  // namespace allmach
