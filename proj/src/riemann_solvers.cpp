#include "allmach/riemann_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace allmach {

namespace {

// sign with sign(0) = +1, so that the linear-wave lower bound max(c/phi, |u|)
// still enters the viscosity on faces with vanishing normal velocity.
inline double sign_pos(double x) { return x < 0.0 ? -1.0 : 1.0; }

inline PrimitiveState rotate_to_normal(const PrimitiveState& w, double nx, double ny) {
  return {w.rho, w.u * nx + w.v * ny, -w.u * ny + w.v * nx, w.p};
}

}  // namespace

void WaveSpeedStrategy::validate() const {
  if (!(phi > 0.0)) throw std::invalid_argument("phi must be positive");
  if (!(delta_rel > 0.0)) throw std::invalid_argument("delta_rel must be positive");
  if (beta.kind == BetaSource::Kind::Constant) {
    if (!(beta.value >= 0.0 && beta.value <= 1.0))
      throw std::invalid_argument("constant beta must lie in [0, 1]");
  } else if (!(beta.value > 0.0)) {
    throw std::invalid_argument("pressure-sensor kappa must be positive");
  }
}

std::string_view strategy_name(WaveSpeedKind kind) {
  switch (kind) {
    case WaveSpeedKind::RoeStandard: return "roe";
    case WaveSpeedKind::RoeHarten: return "roe-harten";
    case WaveSpeedKind::RoeHlleSpeeds: return "roe-hlle";
    case WaveSpeedKind::Fleischmann: return "fleischmann";
    case WaveSpeedKind::FleischmannLinear: return "fleischmann-linear";
    case WaveSpeedKind::GeomBlend: return "blend-geom";
    case WaveSpeedKind::ArithBlend: return "blend-arith";
  }
  return "?";
}

const std::vector<WaveSpeedKind>& all_strategy_kinds() {
  static const std::vector<WaveSpeedKind> kinds = {
      WaveSpeedKind::RoeStandard, WaveSpeedKind::RoeHarten,   WaveSpeedKind::RoeHlleSpeeds,
      WaveSpeedKind::Fleischmann, WaveSpeedKind::FleischmannLinear,
      WaveSpeedKind::GeomBlend,   WaveSpeedKind::ArithBlend};
  return kinds;
}

WaveSpeedKind parse_strategy_kind(std::string_view name) {
  for (auto k : all_strategy_kinds())
    if (strategy_name(k) == name) return k;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

WaveBasis eigensystem(const RoeState& roe, const GasModel& gas) {
  const double u = roe.u_t, v = roe.v_t, c = roe.c_t, H = roe.H_t;
  const double q2 = u * u + v * v;
  const double b1 = (gas.gamma - 1.0) / (c * c);
  const double b2 = 0.5 * b1 * q2;

  WaveBasis w;
  w.lambdas = {u - c, u, u, u + c};
  // columns: r1 = (1, u-c, v, H-uc), r2 = (1, u, v, q2/2), r3 = (0, 0, 1, v),
  // r4 = (1, u+c, v, H+uc)
  w.right = {{{1.0, 1.0, 0.0, 1.0},
              {u - c, u, 0.0, u + c},
              {v, v, 1.0, v},
              {H - u * c, 0.5 * q2, v, H + u * c}}};
  w.left = {{{0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), -0.5 * b1 * v, 0.5 * b1},
             {1.0 - b2, b1 * u, b1 * v, -b1},
             {-v, 0.0, 1.0, 0.0},
             {0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), -0.5 * b1 * v, 0.5 * b1}}};
  return w;
}

WaveDecomposition decompose(const RoeState& roe, const ConservedState& jump,
                            const GasModel& gas) {
  const WaveBasis basis = eigensystem(roe, gas);
  WaveDecomposition d;
  d.lambdas = basis.lambdas;
  d.right_vectors = basis.right;
  for (std::size_t k = 0; k < 4; ++k) {
    double a = 0.0;
    for (std::size_t m = 0; m < 4; ++m) a += basis.left[k][m] * jump[m];
    d.wave_strengths[k] = a;
  }
  return d;
}

double harten_abs(double lambda, double delta) {
  const double a = std::abs(lambda);
  if (a >= delta) return a;
  return (lambda * lambda + delta * delta) / (2.0 * delta);
}

double shock_beta(const PrimitiveState& left, const PrimitiveState& right,
                  const BetaSource& source) {
  if (source.kind == BetaSource::Kind::Constant) return source.value;
  const double jump = std::abs(right.p - left.p);
  return std::min(1.0, jump / (source.value * std::min(left.p, right.p)));
}

std::array<double, 4> effective_speeds(const RoeState& roe, const WaveSpeedStrategy& s,
                                       const PrimitiveState& left, const PrimitiveState& right,
                                       const GasModel& gas) {
  const double u = roe.u_t, c = roe.c_t;
  switch (s.kind) {
    case WaveSpeedKind::RoeStandard:
      return {u - c, u, u, u + c};
    case WaveSpeedKind::RoeHarten: {
      const double delta = s.delta_rel * c;
      return {std::copysign(harten_abs(u - c, delta), u - c), u, u,
              std::copysign(harten_abs(u + c, delta), u + c)};
    }
    case WaveSpeedKind::RoeHlleSpeeds: {
      const double cl = sound_speed(left, gas);
      const double cr = sound_speed(right, gas);
      return {std::min(u - c, left.u - cl), u, u, std::max(u + c, right.u + cr)};
    }
    case WaveSpeedKind::Fleischmann: {
      const double a = std::min(s.phi * std::abs(u), c);
      return {u - a, u, u, u + a};
    }
    case WaveSpeedKind::FleischmannLinear: {
      const double lin = sign_pos(u) * std::max(c / s.phi, std::abs(u));
      return {u - c, lin, lin, u + c};
    }
    case WaveSpeedKind::GeomBlend: {
      const double beta = shock_beta(left, right, s.beta);
      const double m = std::min(s.phi * std::abs(u), c);
      const double a = std::pow(c, beta) * std::pow(m, 1.0 - beta);
      const double lin = sign_pos(u) * std::pow(std::max(c / s.phi, std::abs(u)), beta) *
                         std::pow(std::abs(u), 1.0 - beta);
      return {u - a, lin, lin, u + a};
    }
    case WaveSpeedKind::ArithBlend: {
      const double beta = shock_beta(left, right, s.beta);
      const double m = std::min(s.phi * std::abs(u), c);
      const double a = beta * c + (1.0 - beta) * m;
      const double lin = beta * sign_pos(u) * std::max(c / s.phi, std::abs(u)) + (1.0 - beta) * u;
      return {u - a, lin, lin, u + a};
    }
  }
  return {u - c, u, u, u + c};
}

Flux numerical_flux(const PrimitiveState& left, const PrimitiveState& right, double nx,
                    double ny, const WaveSpeedStrategy& strategy, const GasModel& gas) {
  const PrimitiveState l = rotate_to_normal(left, nx, ny);
  const PrimitiveState r = rotate_to_normal(right, nx, ny);
  const RoeState roe = roe_average(l, r, gas);
  const auto speeds = effective_speeds(roe, strategy, l, r, gas);

  const double u = roe.u_t, v = roe.v_t, c = roe.c_t, H = roe.H_t;
  const double dp = r.p - l.p;
  const double du = r.u - l.u;
  const double dv = r.v - l.v;
  const double drho = r.rho - l.rho;
  const double c2 = c * c;

  // wave strengths from primitive jumps; identical to L*(q_r - q_l) for the
  // Roe averages
  const double a1 = (dp - roe.rho_t * c * du) / (2.0 * c2);
  const double a2 = drho - dp / c2;
  const double a3 = roe.rho_t * dv;
  const double a4 = (dp + roe.rho_t * c * du) / (2.0 * c2);

  const double k1 = std::abs(speeds[0]) * a1;
  const double k2 = std::abs(speeds[1]) * a2;
  const double k3 = std::abs(speeds[2]) * a3;
  const double k4 = std::abs(speeds[3]) * a4;

  const Flux fl = physical_flux_x(l, gas);
  const Flux fr = physical_flux_x(r, gas);

  Flux g;
  g.rho = 0.5 * (fl.rho + fr.rho - (k1 + k2 + k4));
  g.mx = 0.5 * (fl.mx + fr.mx - (k1 * (u - c) + k2 * u + k4 * (u + c)));
  g.my = 0.5 * (fl.my + fr.my - ((k1 + k2 + k4) * v + k3));
  g.E = 0.5 * (fl.E + fr.E -
               (k1 * (H - u * c) + k2 * 0.5 * (u * u + v * v) + k3 * v + k4 * (H + u * c)));

  // back to the global frame
  const double fn = g.mx, ft = g.my;
  g.mx = fn * nx - ft * ny;
  g.my = fn * ny + ft * nx;
  return g;
}

}  // namespace allmach
