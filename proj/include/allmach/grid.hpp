#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "allmach/euler_state.hpp"

namespace allmach {

class InvalidDimensions : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class Side { IMin = 0, IMax = 1, JMin = 2, JMax = 3 };

struct BoundaryKind {
  enum class Type { Periodic, Extrapolation, DirichletState, Wall, Inflow };
  Type type = Type::Extrapolation;
  PrimitiveState state{};  // DirichletState / Inflow
  bool linear = false;     // Extrapolation: opt-in linear instead of constant copy

  static BoundaryKind periodic() { return {Type::Periodic}; }
  static BoundaryKind extrapolation(bool linear = false) {
    return {Type::Extrapolation, {}, linear};
  }
  static BoundaryKind dirichlet(const PrimitiveState& w) { return {Type::DirichletState, w}; }
  static BoundaryKind wall() { return {Type::Wall}; }
  static BoundaryKind inflow(const PrimitiveState& w) { return {Type::Inflow, w}; }

  friend bool operator==(const BoundaryKind&, const BoundaryKind&) = default;
};

/// Logically rectangular quad mesh. Cell (i, j) has vertices (i, j),
/// (i+1, j), (i+1, j+1), (i, j+1). The i-face with index (i, j) separates
/// cells (i-1, j) and (i, j) and its normal points towards increasing i;
/// j-faces likewise.
class StructuredGrid {
 public:
  StructuredGrid(int ni, int nj, std::vector<Point2> vertices);

  int ni() const { return ni_; }
  int nj() const { return nj_; }
  std::size_t cell_count() const { return static_cast<std::size_t>(ni_) * nj_; }
  std::size_t cell_index(int i, int j) const {
    return static_cast<std::size_t>(j) * ni_ + i;
  }

  const Point2& vertex(int i, int j) const { return vertices_[j * (ni_ + 1) + i]; }

  // i-faces: (ni+1) x nj
  const Point2& i_normal(int i, int j) const { return i_normal_[j * (ni_ + 1) + i]; }
  double i_length(int i, int j) const { return i_length_[j * (ni_ + 1) + i]; }
  // j-faces: ni x (nj+1)
  const Point2& j_normal(int i, int j) const { return j_normal_[j * ni_ + i]; }
  double j_length(int i, int j) const { return j_length_[j * ni_ + i]; }

  double area(int i, int j) const { return area_[cell_index(i, j)]; }
  const Point2& center(int i, int j) const { return center_[cell_index(i, j)]; }
  /// area / longest face; the width entering the CFL condition
  double min_width(int i, int j) const;

  BoundaryKind& bc(Side s) { return bc_[static_cast<int>(s)]; }
  const BoundaryKind& bc(Side s) const { return bc_[static_cast<int>(s)]; }
  void set_bc(Side s, const BoundaryKind& b) { bc_[static_cast<int>(s)] = b; }
  /// Throws std::invalid_argument when Periodic is not paired on opposite sides.
  void validate_bcs() const;

  /// Largest |sum of length * normal| over the four faces of any cell.
  double max_gauss_defect() const;

 private:
  int ni_, nj_;
  std::vector<Point2> vertices_;
  std::vector<Point2> i_normal_, j_normal_;
  std::vector<double> i_length_, j_length_;
  std::vector<double> area_;
  std::vector<Point2> center_;
  std::array<BoundaryKind, 4> bc_{};
};

StructuredGrid build_cartesian(int nx, int ny, std::array<double, 2> x_range,
                               std::array<double, 2> y_range);

/// i runs radially outward, j counter-clockwise in angle. A full-circle
/// theta range gets periodic j boundaries.
StructuredGrid build_annulus(double r_inner, double r_outer, int n_radial, int n_angular,
                             std::array<double, 2> theta_range);

/// Cell field with two ghost layers on every side.
template <class T>
class GhostedField {
 public:
  static constexpr int kGhost = 2;

  GhostedField() = default;
  GhostedField(int ni, int nj, const T& fill = T{})
      : ni_(ni), nj_(nj), data_(static_cast<std::size_t>(ni + 2 * kGhost) * (nj + 2 * kGhost), fill) {}

  int ni() const { return ni_; }
  int nj() const { return nj_; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + kGhost) * (ni_ + 2 * kGhost) + (i + kGhost);
  }
  int ni_ = 0, nj_ = 0;
  std::vector<T> data_;
};

using PrimitiveField = GhostedField<PrimitiveState>;

/// Copies interior cells (row-major, i fastest) into a ghosted field.
PrimitiveField make_ghosted(const StructuredGrid& grid, const std::vector<PrimitiveState>& cells);

/// Writes both ghost layers on all four sides (corners included) from the
/// interior data and the grid's boundary kinds. Interior cells untouched.
void fill_ghosts(PrimitiveField& field, const StructuredGrid& grid, const GasModel& gas);

/// Exterior state seen through a boundary face whose interior-side state
/// is `inner`, for non-periodic sides. (nx, ny) is the face normal.
PrimitiveState boundary_exterior(const BoundaryKind& bc, const PrimitiveState& inner, double nx,
                                 double ny);

}  // namespace allmach
