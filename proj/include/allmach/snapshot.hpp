#pragma once

#include <memory>
#include <string>
#include <vector>

#include "allmach/grid.hpp"

namespace allmach {

/// Primitive field at one instant, tied to its mesh.
struct FieldSnapshot {
  double time = 0.0;
  std::shared_ptr<const StructuredGrid> grid;
  std::vector<PrimitiveState> cells;

  /// Throws std::invalid_argument when the cell count does not match the grid.
  void check() const;
};

enum class FieldVariable { Density, VelocityX, VelocityY, Pressure };

double field_value(const PrimitiveState& w, FieldVariable var);

struct SliceRow {
  int slice = 0;  // j index
  double x = 0.0;
  double value = 0.0;
};

/// All j-slices of a snapshot flattened into (x, value) rows, ordered by
/// slice and then by i.
std::vector<SliceRow> slice_scatter(const FieldSnapshot& snap,
                                    FieldVariable var = FieldVariable::Density);

enum class MirrorAxis {
  J,  // pairs (i, j) with (i, nj-1-j)
  I,  // pairs (i, j) with (ni-1-i, j)
};

/// max over mirrored cell pairs of |rho_a - rho_b| / rho_ref.
double asymmetry_metric(const FieldSnapshot& snap, MirrorAxis axis = MirrorAxis::J,
                        double rho_ref = 1.0);

/// `snap_<case>_<time %.6f>.csv`
std::string snapshot_file_name(const std::string& case_name, double time);

/// CSV with header x,y,rho,u,v,p, one row per cell, i fastest.
void write_snapshot_csv(const FieldSnapshot& snap, const std::string& path);
/// Legacy-VTK ASCII structured grid with cell data rho, u, v, p.
void write_snapshot_vtk(const FieldSnapshot& snap, const std::string& path);

/// Reads a snapshot CSV back (cell values only; the grid is left empty).
std::vector<PrimitiveState> read_snapshot_csv(const std::string& path,
                                              std::vector<Point2>* centers = nullptr);

}  // namespace allmach
