#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace allmach {

/// Ideal gas with constant ratio of specific heats.
struct GasModel {
  double gamma = 1.4;

  friend bool operator==(const GasModel&, const GasModel&) = default;
};

/// Four-component vector used for conserved states and fluxes alike:
/// (density, x-momentum, y-momentum, total energy).
struct Vec4 {
  double rho = 0.0;
  double mx = 0.0;
  double my = 0.0;
  double E = 0.0;

  double& operator[](std::size_t k) {
    switch (k) {
      case 0: return rho;
      case 1: return mx;
      case 2: return my;
      default: return E;
    }
  }
  double operator[](std::size_t k) const {
    switch (k) {
      case 0: return rho;
      case 1: return mx;
      case 2: return my;
      default: return E;
    }
  }

  Vec4& operator+=(const Vec4& o) {
    rho += o.rho; mx += o.mx; my += o.my; E += o.E;
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    rho -= o.rho; mx -= o.mx; my -= o.my; E -= o.E;
    return *this;
  }
  Vec4& operator*=(double s) {
    rho *= s; mx *= s; my *= s; E *= s;
    return *this;
  }
  friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend Vec4 operator*(double s, Vec4 a) { return a *= s; }
  friend Vec4 operator*(Vec4 a, double s) { return a *= s; }
  friend bool operator==(const Vec4&, const Vec4&) = default;
};

using ConservedState = Vec4;
using Flux = Vec4;

struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;

  friend bool operator==(const PrimitiveState&, const PrimitiveState&) = default;
};

/// Roe-averaged quantities of a left/right pair.
struct RoeState {
  double rho_t = 0.0;
  double u_t = 0.0;
  double v_t = 0.0;
  double H_t = 0.0;
  double c_t = 0.0;
};

enum class StateErrorKind { NegativeDensity, NegativePressure };

/// Raised when a conserved state has no physical primitive counterpart.
/// Non-finite input is reported as the kind of the first failing check.
class StateError : public std::runtime_error {
 public:
  StateError(StateErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  StateErrorKind kind() const { return kind_; }

 private:
  StateErrorKind kind_;
};

const char* to_string(StateErrorKind kind);

inline bool is_valid(const PrimitiveState& w) {
  return w.rho > 0.0 && w.p > 0.0 && w.u - w.u == 0.0 && w.v - w.v == 0.0;
}

inline ConservedState primitive_to_conserved(const PrimitiveState& w, const GasModel& gas) {
  return {w.rho, w.rho * w.u, w.rho * w.v,
          w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v)};
}

/// Throws StateError when density or pressure is not strictly positive
/// (NaN included).
PrimitiveState conserved_to_primitive(const ConservedState& q, const GasModel& gas);

/// Non-throwing variant for reconstruction fallbacks. Returns false when the
/// state is unphysical; `out` is then unspecified.
bool try_conserved_to_primitive(const ConservedState& q, const GasModel& gas,
                                PrimitiveState& out);

double sound_speed(const PrimitiveState& w, const GasModel& gas);

double total_enthalpy(const PrimitiveState& w, const GasModel& gas);

/// Physical flux in x direction, f = (rho u, rho u^2 + p, rho u v, (E+p) u).
Flux physical_flux_x(const PrimitiveState& w, const GasModel& gas);

/// Physical flux projected onto the unit vector (nx, ny).
Flux physical_flux_normal(const PrimitiveState& w, double nx, double ny, const GasModel& gas);

RoeState roe_average(const PrimitiveState& left, const PrimitiveState& right,
                     const GasModel& gas);

}  // namespace allmach
