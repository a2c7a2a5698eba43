#include "allmach/spatial_scheme.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace allmach {

std::string_view limiter_name(Limiter l) {
  switch (l) {
    case Limiter::Minmod: return "minmod";
    case Limiter::MC: return "mc";
    case Limiter::VanLeer: return "vanleer";
  }
  return "?";
}

Limiter parse_limiter(std::string_view name) {
  for (auto l : {Limiter::Minmod, Limiter::MC, Limiter::VanLeer})
    if (limiter_name(l) == name) return l;
  throw std::invalid_argument("unknown limiter '" + std::string(name) + "'");
}

double limited_slope(Limiter l, double a, double b) {
  if (a * b <= 0.0) return 0.0;
  switch (l) {
    case Limiter::Minmod:
      return std::abs(a) < std::abs(b) ? a : b;
    case Limiter::MC: {
      const double m = std::min({2.0 * std::abs(a), 2.0 * std::abs(b), 0.5 * std::abs(a + b)});
      return std::copysign(m, a);
    }
    case Limiter::VanLeer:
      return 2.0 * a * b / (a + b);
  }
  return 0.0;
}

void SchemeConfig::validate() const {
  if (order != 1 && order != 2) throw std::invalid_argument("spatial order must be 1 or 2");
  if (hancock && order != 2) throw std::invalid_argument("MUSCL-Hancock requires order 2");
}

namespace {

PrimitiveState slope(Limiter l, const PrimitiveState& m, const PrimitiveState& c,
                     const PrimitiveState& p) {
  return {limited_slope(l, c.rho - m.rho, p.rho - c.rho), limited_slope(l, c.u - m.u, p.u - c.u),
          limited_slope(l, c.v - m.v, p.v - c.v), limited_slope(l, c.p - m.p, p.p - c.p)};
}

inline PrimitiveState axpy(const PrimitiveState& w, double s, const PrimitiveState& d) {
  return {w.rho + s * d.rho, w.u + s * d.u, w.v + s * d.v, w.p + s * d.p};
}

}  // namespace

FaceStates muscl_faces(const PrimitiveField& f, const StructuredGrid& grid, Limiter limiter) {
  const int ni = grid.ni(), nj = grid.nj();
  FaceStates fs;
  fs.i_left.resize(static_cast<std::size_t>(ni + 1) * nj);
  fs.i_right.resize(fs.i_left.size());
  fs.j_left.resize(static_cast<std::size_t>(ni) * (nj + 1));
  fs.j_right.resize(fs.j_left.size());
  std::size_t fallbacks = 0;

#pragma omp parallel for reduction(+ : fallbacks) schedule(static)
  for (int j = 0; j < nj; ++j) {
    std::vector<PrimitiveState> s(ni + 2);
    for (int k = -1; k <= ni; ++k) s[k + 1] = slope(limiter, f(k - 1, j), f(k, j), f(k + 1, j));
    for (int i = 0; i <= ni; ++i) {
      PrimitiveState l = axpy(f(i - 1, j), 0.5, s[i]);
      PrimitiveState r = axpy(f(i, j), -0.5, s[i + 1]);
      if (!is_valid(l) || !is_valid(r)) {
        l = f(i - 1, j);
        r = f(i, j);
        ++fallbacks;
      }
      fs.i_left[j * (ni + 1) + i] = l;
      fs.i_right[j * (ni + 1) + i] = r;
    }
  }

#pragma omp parallel for reduction(+ : fallbacks) schedule(static)
  for (int i = 0; i < ni; ++i) {
    std::vector<PrimitiveState> s(nj + 2);
    for (int k = -1; k <= nj; ++k) s[k + 1] = slope(limiter, f(i, k - 1), f(i, k), f(i, k + 1));
    for (int j = 0; j <= nj; ++j) {
      PrimitiveState l = axpy(f(i, j - 1), 0.5, s[j]);
      PrimitiveState r = axpy(f(i, j), -0.5, s[j + 1]);
      if (!is_valid(l) || !is_valid(r)) {
        l = f(i, j - 1);
        r = f(i, j);
        ++fallbacks;
      }
      fs.j_left[j * ni + i] = l;
      fs.j_right[j * ni + i] = r;
    }
  }
  fs.fallback_count = fallbacks;
  return fs;
}

FaceStates hancock_predictor(const PrimitiveField& f, const StructuredGrid& grid, Limiter limiter,
                             double dt, const GasModel& gas) {
  const int ni = grid.ni(), nj = grid.nj();
  // per cell: extrapolations to the i-low, i-high, j-low, j-high faces
  std::vector<std::array<PrimitiveState, 4>> ext(grid.cell_count());
  std::size_t fallbacks = 0;

#pragma omp parallel for reduction(+ : fallbacks) schedule(static)
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const PrimitiveState& w = f(i, j);
      const PrimitiveState si = slope(limiter, f(i - 1, j), w, f(i + 1, j));
      const PrimitiveState sj = slope(limiter, f(i, j - 1), w, f(i, j + 1));
      std::array<PrimitiveState, 4> e = {axpy(w, -0.5, si), axpy(w, 0.5, si), axpy(w, -0.5, sj),
                                         axpy(w, 0.5, sj)};
      if (!std::all_of(e.begin(), e.end(), [](const PrimitiveState& x) { return is_valid(x); })) {
        e = {w, w, w, w};
        ++fallbacks;
      }
      if (dt != 0.0) {
        const Point2 n0 = grid.i_normal(i, j), n1 = grid.i_normal(i + 1, j);
        const Point2 m0 = grid.j_normal(i, j), m1 = grid.j_normal(i, j + 1);
        Flux net = grid.i_length(i + 1, j) * physical_flux_normal(e[1], n1.x, n1.y, gas);
        net -= grid.i_length(i, j) * physical_flux_normal(e[0], n0.x, n0.y, gas);
        net += grid.j_length(i, j + 1) * physical_flux_normal(e[3], m1.x, m1.y, gas);
        net -= grid.j_length(i, j) * physical_flux_normal(e[2], m0.x, m0.y, gas);
        const ConservedState dq = (-0.5 * dt / grid.area(i, j)) * net;
        std::array<PrimitiveState, 4> evolved;
        bool ok = true;
        for (int k = 0; k < 4 && ok; ++k)
          ok = try_conserved_to_primitive(primitive_to_conserved(e[k], gas) + dq, gas, evolved[k]);
        if (ok) {
          e = evolved;
        } else {
          ++fallbacks;
        }
      }
      ext[grid.cell_index(i, j)] = e;
    }
  }

  FaceStates fs;
  fs.i_left.resize(static_cast<std::size_t>(ni + 1) * nj);
  fs.i_right.resize(fs.i_left.size());
  fs.j_left.resize(static_cast<std::size_t>(ni) * (nj + 1));
  fs.j_right.resize(fs.j_left.size());
  const auto at = [&](int i, int j) -> const std::array<PrimitiveState, 4>& {
    return ext[grid.cell_index(i, j)];
  };
  using T = BoundaryKind::Type;

  for (int j = 0; j < nj; ++j) {
    for (int i = 1; i < ni; ++i) {
      fs.i_left[j * (ni + 1) + i] = at(i - 1, j)[1];
      fs.i_right[j * (ni + 1) + i] = at(i, j)[0];
    }
    const Point2 n0 = grid.i_normal(0, j), n1 = grid.i_normal(ni, j);
    const PrimitiveState in0 = at(0, j)[0], in1 = at(ni - 1, j)[1];
    const bool periodic = grid.bc(Side::IMin).type == T::Periodic;
    fs.i_right[j * (ni + 1)] = in0;
    fs.i_left[j * (ni + 1)] =
        periodic ? in1 : boundary_exterior(grid.bc(Side::IMin), in0, n0.x, n0.y);
    fs.i_left[j * (ni + 1) + ni] = in1;
    fs.i_right[j * (ni + 1) + ni] =
        periodic ? in0 : boundary_exterior(grid.bc(Side::IMax), in1, n1.x, n1.y);
  }
  for (int i = 0; i < ni; ++i) {
    for (int j = 1; j < nj; ++j) {
      fs.j_left[j * ni + i] = at(i, j - 1)[3];
      fs.j_right[j * ni + i] = at(i, j)[2];
    }
    const Point2 n0 = grid.j_normal(i, 0), n1 = grid.j_normal(i, nj);
    const PrimitiveState in0 = at(i, 0)[2], in1 = at(i, nj - 1)[3];
    const bool periodic = grid.bc(Side::JMin).type == T::Periodic;
    fs.j_right[i] = in0;
    fs.j_left[i] = periodic ? in1 : boundary_exterior(grid.bc(Side::JMin), in0, n0.x, n0.y);
    fs.j_left[nj * ni + i] = in1;
    fs.j_right[nj * ni + i] =
        periodic ? in0 : boundary_exterior(grid.bc(Side::JMax), in1, n1.x, n1.y);
  }
  fs.fallback_count = fallbacks;
  return fs;
}

FiniteVolumeOperator::FiniteVolumeOperator(const StructuredGrid& grid, SchemeConfig scheme,
                                           WaveSpeedStrategy strategy, GasModel gas)
    : grid_(&grid),
      scheme_(scheme),
      strategy_(strategy),
      gas_(gas),
      ghosted_(grid.ni(), grid.nj()),
      prim_(grid.cell_count()),
      i_flux_(static_cast<std::size_t>(grid.ni() + 1) * grid.nj()),
      j_flux_(static_cast<std::size_t>(grid.ni()) * (grid.nj() + 1)) {
  scheme_.validate();
  strategy_.validate();
  grid.validate_bcs();
}

void FiniteVolumeOperator::to_primitive(const std::vector<ConservedState>& q,
                                        std::vector<PrimitiveState>& w) const {
  w.resize(q.size());
  const int ni = grid_->ni();
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (!try_conserved_to_primitive(q[k], gas_, w[k])) {
      const int i = static_cast<int>(k % ni), j = static_cast<int>(k / ni);
      try {
        conserved_to_primitive(q[k], gas_);
      } catch (const StateError& e) {
        std::ostringstream msg;
        msg << "cell (" << i << ", " << j << "): " << e.what();
        throw CellBreakdown(i, j, e.kind(), msg.str());
      }
    }
  }
}

void FiniteVolumeOperator::residual(const std::vector<ConservedState>& q,
                                    std::vector<ConservedState>& dqdt, double dt) {
  to_primitive(q, prim_);
  residual_primitive(prim_, dqdt, dt);
}

void FiniteVolumeOperator::residual_primitive(const std::vector<PrimitiveState>& w,
                                              std::vector<ConservedState>& dqdt, double dt) {
  const StructuredGrid& g = *grid_;
  const int ni = g.ni(), nj = g.nj();
  if (w.size() != g.cell_count()) throw std::invalid_argument("field size does not match grid");
  for (int j = 0; j < nj; ++j)
    for (int i = 0; i < ni; ++i) ghosted_(i, j) = w[g.cell_index(i, j)];
  fill_ghosts(ghosted_, g, gas_);
  fallback_count_ = 0;

  if (scheme_.order == 1) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i <= ni; ++i) {
        const Point2 n = g.i_normal(i, j);
        i_flux_[j * (ni + 1) + i] =
            g.i_length(i, j) *
            numerical_flux(ghosted_(i - 1, j), ghosted_(i, j), n.x, n.y, strategy_, gas_);
      }
#pragma omp parallel for schedule(static)
    for (int j = 0; j <= nj; ++j)
      for (int i = 0; i < ni; ++i) {
        const Point2 n = g.j_normal(i, j);
        j_flux_[j * ni + i] =
            g.j_length(i, j) *
            numerical_flux(ghosted_(i, j - 1), ghosted_(i, j), n.x, n.y, strategy_, gas_);
      }
  } else {
    const FaceStates fs = scheme_.hancock ? hancock_predictor(ghosted_, g, scheme_.limiter, dt, gas_)
                                          : muscl_faces(ghosted_, g, scheme_.limiter);
    fallback_count_ = fs.fallback_count;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i <= ni; ++i) {
        const std::size_t k = j * (ni + 1) + i;
        const Point2 n = g.i_normal(i, j);
        i_flux_[k] = g.i_length(i, j) *
                     numerical_flux(fs.i_left[k], fs.i_right[k], n.x, n.y, strategy_, gas_);
      }
#pragma omp parallel for schedule(static)
    for (int j = 0; j <= nj; ++j)
      for (int i = 0; i < ni; ++i) {
        const std::size_t k = j * ni + i;
        const Point2 n = g.j_normal(i, j);
        j_flux_[k] = g.j_length(i, j) *
                     numerical_flux(fs.j_left[k], fs.j_right[k], n.x, n.y, strategy_, gas_);
      }
  }

  dqdt.resize(g.cell_count());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nj; ++j)
    for (int i = 0; i < ni; ++i) {
      Flux net = i_face_flux(i + 1, j);
      net -= i_face_flux(i, j);
      net += j_face_flux(i, j + 1);
      net -= j_face_flux(i, j);
      dqdt[g.cell_index(i, j)] = (-1.0 / g.area(i, j)) * net;
    }
}

std::vector<ConservedState> compute_residual(const std::vector<PrimitiveState>& field,
                                             const StructuredGrid& grid, const SchemeConfig& scheme,
                                             const WaveSpeedStrategy& strategy,
                                             const GasModel& gas) {
  FiniteVolumeOperator op(grid, scheme, strategy, gas);
  std::vector<ConservedState> r;
  op.residual_primitive(field, r);
  return r;
}

}  // namespace allmach
