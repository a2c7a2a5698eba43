#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "allmach/euler_state.hpp"
#include "allmach/grid.hpp"
#include "allmach/riemann_solvers.hpp"

namespace allmach {

enum class Limiter { Minmod, MC, VanLeer };

std::string_view limiter_name(Limiter l);
Limiter parse_limiter(std::string_view name);

/// Limited slope from the backward and forward differences.
double limited_slope(Limiter l, double backward, double forward);

struct SchemeConfig {
  int order = 1;
  Limiter limiter = Limiter::Minmod;
  bool hancock = false;

  /// hancock requires order 2
  void validate() const;

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// A conserved state could not be converted back to primitive form.
class CellBreakdown : public std::runtime_error {
 public:
  CellBreakdown(int i, int j, StateErrorKind kind, const std::string& what)
      : std::runtime_error(what), i_(i), j_(j), kind_(kind) {}
  int i() const { return i_; }
  int j() const { return j_; }
  StateErrorKind kind() const { return kind_; }

 private:
  int i_, j_;
  StateErrorKind kind_;
};

/// Left/right states on every face. i-faces are stored (ni+1) x nj,
/// j-faces ni x (nj+1), both with i fastest.
struct FaceStates {
  std::vector<PrimitiveState> i_left, i_right, j_left, j_right;
  std::size_t fallback_count = 0;
};

/// Limited linear reconstruction in primitive variables along index
/// directions. Requires two filled ghost layers. Faces whose reconstructed
/// states are unphysical revert to the adjacent cell values.
FaceStates muscl_faces(const PrimitiveField& field, const StructuredGrid& grid, Limiter limiter);

/// Face states evolved by dt/2 with the cell-local flux balance of each
/// cell's own extrapolated states (the MUSCL-Hancock predictor). Boundary
/// exterior states are derived from the evolved interior states through
/// the boundary conditions. Cells whose evolved states are unphysical
/// keep their unevolved extrapolations.
FaceStates hancock_predictor(const PrimitiveField& field, const StructuredGrid& grid,
                             Limiter limiter, double dt, const GasModel& gas);

/// Finite-volume operator with reusable work buffers.
class FiniteVolumeOperator {
 public:
  FiniteVolumeOperator(const StructuredGrid& grid, SchemeConfig scheme,
                       WaveSpeedStrategy strategy, GasModel gas);

  const StructuredGrid& grid() const { return *grid_; }
  const SchemeConfig& scheme() const { return scheme_; }
  const WaveSpeedStrategy& strategy() const { return strategy_; }
  const GasModel& gas() const { return gas_; }

  /// Converts conserved cells to primitives; throws CellBreakdown.
  void to_primitive(const std::vector<ConservedState>& q, std::vector<PrimitiveState>& w) const;

  /// dq/dt for the given conserved cells. With hancock enabled the face
  /// states are predicted over `dt`; otherwise dt is ignored.
  void residual(const std::vector<ConservedState>& q, std::vector<ConservedState>& dqdt,
                double dt = 0.0);
  /// Same, from primitive cells.
  void residual_primitive(const std::vector<PrimitiveState>& w,
                          std::vector<ConservedState>& dqdt, double dt = 0.0);

  /// Length-weighted numerical fluxes of the last evaluation.
  const Flux& i_face_flux(int i, int j) const { return i_flux_[j * (grid_->ni() + 1) + i]; }
  const Flux& j_face_flux(int i, int j) const { return j_flux_[j * grid_->ni() + i]; }

  /// Reconstruction fallbacks in the last evaluation.
  std::size_t fallback_count() const { return fallback_count_; }

 private:
  const StructuredGrid* grid_;
  SchemeConfig scheme_;
  WaveSpeedStrategy strategy_;
  GasModel gas_;
  PrimitiveField ghosted_;
  std::vector<PrimitiveState> prim_;
  std::vector<Flux> i_flux_, j_flux_;
  std::size_t fallback_count_ = 0;
};

/// One-shot residual evaluation from primitive cells.
std::vector<ConservedState> compute_residual(const std::vector<PrimitiveState>& field,
                                             const StructuredGrid& grid, const SchemeConfig& scheme,
                                             const WaveSpeedStrategy& strategy, const GasModel& gas);

}  // namespace allmach
