#include "allmach/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace allmach {

StructuredGrid::StructuredGrid(int ni, int nj, std::vector<Point2> vertices)
    : ni_(ni), nj_(nj), vertices_(std::move(vertices)) {
  if (ni < 1 || nj < 1) throw InvalidDimensions("grid needs at least one cell per direction");
  if (vertices_.size() != static_cast<std::size_t>(ni + 1) * (nj + 1))
    throw InvalidDimensions("vertex count does not match cell counts");

  i_normal_.resize(static_cast<std::size_t>(ni + 1) * nj);
  i_length_.resize(i_normal_.size());
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i <= ni; ++i) {
      const Point2 a = vertex(i, j), b = vertex(i, j + 1);
      const double ex = b.x - a.x, ey = b.y - a.y;
      const double len = std::hypot(ex, ey);
      if (!(len > 0.0)) throw InvalidDimensions("degenerate i-face");
      i_length_[j * (ni + 1) + i] = len;
      i_normal_[j * (ni + 1) + i] = {ey / len, -ex / len};
    }
  }
  j_normal_.resize(static_cast<std::size_t>(ni) * (nj + 1));
  j_length_.resize(j_normal_.size());
  for (int j = 0; j <= nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const Point2 a = vertex(i, j), b = vertex(i + 1, j);
      const double ex = b.x - a.x, ey = b.y - a.y;
      const double len = std::hypot(ex, ey);
      if (!(len > 0.0)) throw InvalidDimensions("degenerate j-face");
      j_length_[j * ni + i] = len;
      j_normal_[j * ni + i] = {-ey / len, ex / len};
    }
  }

  area_.resize(cell_count());
  center_.resize(cell_count());
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const std::array<Point2, 4> p = {vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1),
                                       vertex(i, j + 1)};
      double a2 = 0.0, cx = 0.0, cy = 0.0;
      for (int k = 0; k < 4; ++k) {
        const Point2& s = p[k];
        const Point2& t = p[(k + 1) % 4];
        const double cross = s.x * t.y - t.x * s.y;
        a2 += cross;
        cx += (s.x + t.x) * cross;
        cy += (s.y + t.y) * cross;
      }
      if (!(a2 > 0.0)) throw InvalidDimensions("cell with non-positive area (left-handed grid?)");
      area_[cell_index(i, j)] = 0.5 * a2;
      center_[cell_index(i, j)] = {cx / (3.0 * a2), cy / (3.0 * a2)};
    }
  }
}

double StructuredGrid::min_width(int i, int j) const {
  const double lmax = std::max({i_length(i, j), i_length(i + 1, j), j_length(i, j),
                                j_length(i, j + 1)});
  return area(i, j) / lmax;
}

void StructuredGrid::validate_bcs() const {
  using T = BoundaryKind::Type;
  const bool ip0 = bc(Side::IMin).type == T::Periodic, ip1 = bc(Side::IMax).type == T::Periodic;
  const bool jp0 = bc(Side::JMin).type == T::Periodic, jp1 = bc(Side::JMax).type == T::Periodic;
  if (ip0 != ip1 || jp0 != jp1)
    throw std::invalid_argument("periodic boundaries must appear on both opposite sides");
}

double StructuredGrid::max_gauss_defect() const {
  double worst = 0.0;
  for (int j = 0; j < nj_; ++j) {
    for (int i = 0; i < ni_; ++i) {
      const double sx = i_length(i + 1, j) * i_normal(i + 1, j).x - i_length(i, j) * i_normal(i, j).x +
                        j_length(i, j + 1) * j_normal(i, j + 1).x - j_length(i, j) * j_normal(i, j).x;
      const double sy = i_length(i + 1, j) * i_normal(i + 1, j).y - i_length(i, j) * i_normal(i, j).y +
                        j_length(i, j + 1) * j_normal(i, j + 1).y - j_length(i, j) * j_normal(i, j).y;
      worst = std::max(worst, std::hypot(sx, sy));
    }
  }
  return worst;
}

StructuredGrid build_cartesian(int nx, int ny, std::array<double, 2> x_range,
                               std::array<double, 2> y_range) {
  if (nx < 1 || ny < 1) throw InvalidDimensions("nx, ny must be >= 1");
  if (!(x_range[1] > x_range[0]) || !(y_range[1] > y_range[0]))
    throw InvalidDimensions("empty coordinate range");
  std::vector<Point2> v(static_cast<std::size_t>(nx + 1) * (ny + 1));
  const double dx = (x_range[1] - x_range[0]) / nx;
  const double dy = (y_range[1] - y_range[0]) / ny;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      v[j * (nx + 1) + i] = {i == nx ? x_range[1] : x_range[0] + i * dx,
                             j == ny ? y_range[1] : y_range[0] + j * dy};
  return StructuredGrid(nx, ny, std::move(v));
}

StructuredGrid build_annulus(double r_inner, double r_outer, int n_radial, int n_angular,
                             std::array<double, 2> theta_range) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (n_radial < 1 || n_angular < 1) throw InvalidDimensions("cell counts must be >= 1");
  if (!(r_inner > 0.0) || !(r_outer > r_inner)) throw InvalidDimensions("need 0 < r_inner < r_outer");
  const double span = theta_range[1] - theta_range[0];
  if (!(span > 0.0) || span > two_pi + 1e-12) throw InvalidDimensions("bad theta range");
  const bool full = std::abs(span - two_pi) < 1e-12;

  const double dr = (r_outer - r_inner) / n_radial;
  const double dth = span / n_angular;
  std::vector<Point2> v(static_cast<std::size_t>(n_radial + 1) * (n_angular + 1));
  for (int j = 0; j <= n_angular; ++j) {
    const int jj = (full && j == n_angular) ? 0 : j;
    const double th = jj == n_angular ? theta_range[1] : theta_range[0] + jj * dth;
    const double c = std::cos(th), s = std::sin(th);
    for (int i = 0; i <= n_radial; ++i) {
      const double r = i == n_radial ? r_outer : r_inner + i * dr;
      v[j * (n_radial + 1) + i] = {r * c, r * s};
    }
  }
  StructuredGrid g(n_radial, n_angular, std::move(v));
  if (full) {
    g.set_bc(Side::JMin, BoundaryKind::periodic());
    g.set_bc(Side::JMax, BoundaryKind::periodic());
  }
  return g;
}

PrimitiveField make_ghosted(const StructuredGrid& grid, const std::vector<PrimitiveState>& cells) {
  if (cells.size() != grid.cell_count())
    throw std::invalid_argument("field size does not match grid");
  PrimitiveField f(grid.ni(), grid.nj());
  for (int j = 0; j < grid.nj(); ++j)
    for (int i = 0; i < grid.ni(); ++i) f(i, j) = cells[grid.cell_index(i, j)];
  return f;
}

PrimitiveState boundary_exterior(const BoundaryKind& bc, const PrimitiveState& inner, double nx,
                                 double ny) {
  using T = BoundaryKind::Type;
  switch (bc.type) {
    case T::DirichletState:
    case T::Inflow:
      return bc.state;
    case T::Wall: {
      const double vn = inner.u * nx + inner.v * ny;
      return {inner.rho, inner.u - 2.0 * vn * nx, inner.v - 2.0 * vn * ny, inner.p};
    }
    case T::Extrapolation:
    case T::Periodic:
      break;
  }
  return inner;
}

namespace {

PrimitiveState linear_extrapolate(const PrimitiveState& a, const PrimitiveState& b, int g) {
  // a: boundary cell, b: next interior cell, g: ghost distance (1 or 2)
  const double k = g;
  PrimitiveState w{a.rho + k * (a.rho - b.rho), a.u + k * (a.u - b.u), a.v + k * (a.v - b.v),
                   a.p + k * (a.p - b.p)};
  return is_valid(w) ? w : a;
}

// Fills the ghost cells on one side along a line of cells.
// `cell(k)` accesses the k-th cell counted from the boundary inward
// (k < 0 are ghosts), n is the number of cells along the line, and
// `partner(k)` the cells counted from the opposite boundary (for periodic).
template <class At, class Partner>
void fill_line(const BoundaryKind& bc, int n, At cell, Partner partner, double nx, double ny) {
  using T = BoundaryKind::Type;
  for (int g = 1; g <= 2; ++g) {
    const int mirror = std::min(g - 1, n - 1);
    switch (bc.type) {
      case T::Periodic:
        // partner(k) counts from the far side; ghost -g takes far cell g-1
        cell(-g) = partner(std::min(g - 1, n - 1));
        break;
      case T::Extrapolation:
        cell(-g) = (bc.linear && n >= 2) ? linear_extrapolate(cell(0), cell(1), g) : cell(0);
        break;
      case T::DirichletState:
      case T::Inflow:
        cell(-g) = bc.state;
        break;
      case T::Wall:
        cell(-g) = boundary_exterior(bc, cell(mirror), nx, ny);
        break;
    }
  }
}

}  // namespace

void fill_ghosts(PrimitiveField& f, const StructuredGrid& grid, const GasModel&) {
  const int ni = grid.ni(), nj = grid.nj();
  for (int j = 0; j < nj; ++j) {
    const Point2 n0 = grid.i_normal(0, j);
    const Point2 n1 = grid.i_normal(ni, j);
    fill_line(grid.bc(Side::IMin), ni, [&](int k) -> PrimitiveState& { return f(k, j); },
              [&](int k) -> PrimitiveState& { return f(ni - 1 - k, j); }, n0.x, n0.y);
    fill_line(grid.bc(Side::IMax), ni, [&](int k) -> PrimitiveState& { return f(ni - 1 - k, j); },
              [&](int k) -> PrimitiveState& { return f(k, j); }, n1.x, n1.y);
  }
  for (int i = -2; i < ni + 2; ++i) {
    const int ic = std::clamp(i, 0, ni - 1);
    const Point2 n0 = grid.j_normal(ic, 0);
    const Point2 n1 = grid.j_normal(ic, nj);
    fill_line(grid.bc(Side::JMin), nj, [&](int k) -> PrimitiveState& { return f(i, k); },
              [&](int k) -> PrimitiveState& { return f(i, nj - 1 - k); }, n0.x, n0.y);
    fill_line(grid.bc(Side::JMax), nj, [&](int k) -> PrimitiveState& { return f(i, nj - 1 - k); },
              [&](int k) -> PrimitiveState& { return f(i, k); }, n1.x, n1.y);
  }
}

}  // namespace allmach
