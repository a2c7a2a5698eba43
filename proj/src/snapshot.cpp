#include "allmach/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace allmach {

void FieldSnapshot::check() const {
  if (!grid) throw std::invalid_argument("snapshot without grid");
  if (cells.size() != grid->cell_count())
    throw std::invalid_argument("snapshot size does not match its grid");
}

double field_value(const PrimitiveState& w, FieldVariable var) {
  switch (var) {
    case FieldVariable::Density: return w.rho;
    case FieldVariable::VelocityX: return w.u;
    case FieldVariable::VelocityY: return w.v;
    case FieldVariable::Pressure: return w.p;
  }
  return w.rho;
}

std::vector<SliceRow> slice_scatter(const FieldSnapshot& snap, FieldVariable var) {
  snap.check();
  const StructuredGrid& g = *snap.grid;
  std::vector<SliceRow> rows;
  rows.reserve(g.cell_count());
  for (int j = 0; j < g.nj(); ++j)
    for (int i = 0; i < g.ni(); ++i)
      rows.push_back({j, g.center(i, j).x, field_value(snap.cells[g.cell_index(i, j)], var)});
  return rows;
}

double asymmetry_metric(const FieldSnapshot& snap, MirrorAxis axis, double rho_ref) {
  snap.check();
  if (!(rho_ref > 0.0)) throw std::invalid_argument("reference density must be positive");
  const StructuredGrid& g = *snap.grid;
  double worst = 0.0;
  for (int j = 0; j < g.nj(); ++j) {
    for (int i = 0; i < g.ni(); ++i) {
      const int mi = axis == MirrorAxis::I ? g.ni() - 1 - i : i;
      const int mj = axis == MirrorAxis::J ? g.nj() - 1 - j : j;
      const double d = std::abs(snap.cells[g.cell_index(i, j)].rho - snap.cells[g.cell_index(mi, mj)].rho);
      worst = std::max(worst, d);
    }
  }
  return worst / rho_ref;
}

std::string snapshot_file_name(const std::string& case_name, double time) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", time);
  return "snap_" + case_name + "_" + buf + ".csv";
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void put(std::ostream& o, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  o << buf;
}

}  // namespace

void write_snapshot_csv(const FieldSnapshot& snap, const std::string& path) {
  snap.check();
  const StructuredGrid& g = *snap.grid;
  std::ostringstream o;
  o << "x,y,rho,u,v,p\n";
  for (int j = 0; j < g.nj(); ++j) {
    for (int i = 0; i < g.ni(); ++i) {
      const Point2& c = g.center(i, j);
      const PrimitiveState& w = snap.cells[g.cell_index(i, j)];
      for (double v : {c.x, c.y, w.rho, w.u, w.v}) {
        put(o, v);
        o << ',';
      }
      put(o, w.p);
      o << '\n';
    }
  }
  auto out = open_out(path);
  out << o.str();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void write_snapshot_vtk(const FieldSnapshot& snap, const std::string& path) {
  snap.check();
  const StructuredGrid& g = *snap.grid;
  std::ostringstream o;
  o << "# vtk DataFile Version 3.0\n"
    << "snapshot t=";
  put(o, snap.time);
  o << "\nASCII\nDATASET STRUCTURED_GRID\n"
    << "DIMENSIONS " << g.ni() + 1 << ' ' << g.nj() + 1 << " 1\n"
    << "POINTS " << (g.ni() + 1) * (g.nj() + 1) << " double\n";
  for (int j = 0; j <= g.nj(); ++j) {
    for (int i = 0; i <= g.ni(); ++i) {
      put(o, g.vertex(i, j).x);
      o << ' ';
      put(o, g.vertex(i, j).y);
      o << " 0\n";
    }
  }
  o << "CELL_DATA " << g.cell_count() << '\n';
  for (auto var : {FieldVariable::Density, FieldVariable::VelocityX, FieldVariable::VelocityY,
                   FieldVariable::Pressure}) {
    static constexpr const char* names[] = {"rho", "u", "v", "p"};
    o << "SCALARS " << names[static_cast<int>(var)] << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& w : snap.cells) {
      put(o, field_value(w, var));
      o << '\n';
    }
  }
  auto out = open_out(path);
  out << o.str();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<PrimitiveState> read_snapshot_csv(const std::string& path, std::vector<Point2>* centers) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "x,y,rho,u,v,p")
    throw std::runtime_error("'" + path + "' is not a snapshot file");
  std::vector<PrimitiveState> cells;
  if (centers) centers->clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[6];
    std::istringstream row(line);
    for (int k = 0; k < 6; ++k) {
      std::string field;
      if (!std::getline(row, field, ',')) throw std::runtime_error("short row in '" + path + "'");
      v[k] = std::stod(field);
    }
    cells.push_back({v[2], v[3], v[4], v[5]});
    if (centers) centers->push_back({v[0], v[1]});
  }
  return cells;
}

}  // namespace allmach
