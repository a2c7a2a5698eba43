#include "allmach/euler_state.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace allmach {

const char* to_string(StateErrorKind kind) {
  switch (kind) {
    case StateErrorKind::NegativeDensity: return "NegativeDensity";
    case StateErrorKind::NegativePressure: return "NegativePressure";
  }
  return "Unknown";
}

bool try_conserved_to_primitive(const ConservedState& q, const GasModel& gas,
                                PrimitiveState& out) {
  if (!(q.rho > 0.0) || !std::isfinite(q.rho)) return false;
  const double inv = 1.0 / q.rho;
  out.rho = q.rho;
  out.u = q.mx * inv;
  out.v = q.my * inv;
  out.p = (gas.gamma - 1.0) * (q.E - 0.5 * (q.mx * out.u + q.my * out.v));
  return out.p > 0.0 && std::isfinite(out.p);
}

PrimitiveState conserved_to_primitive(const ConservedState& q, const GasModel& gas) {
  PrimitiveState w;
  if (try_conserved_to_primitive(q, gas, w)) return w;
  std::ostringstream msg;
  if (!(q.rho > 0.0) || !std::isfinite(q.rho)) {
    msg << "non-positive density " << q.rho;
    throw StateError(StateErrorKind::NegativeDensity, msg.str());
  }
  msg << "non-positive pressure " << w.p << " (rho=" << q.rho << ", E=" << q.E << ")";
  throw StateError(StateErrorKind::NegativePressure, msg.str());
}

double sound_speed(const PrimitiveState& w, const GasModel& gas) {
  assert(is_valid(w));
  return std::sqrt(gas.gamma * w.p / w.rho);
}

double total_enthalpy(const PrimitiveState& w, const GasModel& gas) {
  const double E = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return (E + w.p) / w.rho;
}

Flux physical_flux_x(const PrimitiveState& w, const GasModel& gas) {
  const double E = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  const double m = w.rho * w.u;
  return {m, m * w.u + w.p, m * w.v, (E + w.p) * w.u};
}

Flux physical_flux_normal(const PrimitiveState& w, double nx, double ny, const GasModel& gas) {
  const double E = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  const double un = w.u * nx + w.v * ny;
  const double m = w.rho * un;
  return {m, m * w.u + w.p * nx, m * w.v + w.p * ny, (E + w.p) * un};
}

RoeState roe_average(const PrimitiveState& left, const PrimitiveState& right,
                     const GasModel& gas) {
  const double sl = std::sqrt(left.rho);
  const double sr = std::sqrt(right.rho);
  const double inv = 1.0 / (sl + sr);
  RoeState r;
  r.rho_t = sl * sr;
  r.u_t = (sl * left.u + sr * right.u) * inv;
  r.v_t = (sl * left.v + sr * right.v) * inv;
  r.H_t = (sl * total_enthalpy(left, gas) + sr * total_enthalpy(right, gas)) * inv;
  const double c2 = (gas.gamma - 1.0) * (r.H_t - 0.5 * (r.u_t * r.u_t + r.v_t * r.v_t));
  // c2 > 0 for any pair of valid states; the max guards roundoff only.
  r.c_t = std::sqrt(std::max(c2, 0.0));
  return r;
}

}  // namespace allmach
