#include "allmach/stability_lab.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace allmach {

std::string_view curve_kind_name(StabilityCurve::Kind kind) {
  switch (kind) {
    case StabilityCurve::Kind::RkBoundary: return "rk_boundary";
    case StabilityCurve::Kind::AbRootLocus: return "ab_root_locus";
    case StabilityCurve::Kind::Spectrum: return "spectrum";
  }
  return "?";
}

Complex rk_stability_function(const ButcherTableau& tab, Complex z) {
  // (I - zA) x = 1 by forward substitution; A is strictly lower triangular
  std::vector<Complex> x(tab.stages);
  Complex bx = 0.0;
  for (int i = 0; i < tab.stages; ++i) {
    Complex acc = 1.0;
    for (int j = 0; j < i; ++j) acc += z * tab.coeff(i, j) * x[j];
    x[i] = acc;
    bx += tab.b[i] * acc;
  }
  return 1.0 + z * bx;
}

std::vector<double> rk_stability_polynomial(const ButcherTableau& tab) {
  const int s = tab.stages;
  std::vector<double> gamma(s + 1, 0.0);
  gamma[0] = 1.0;
  std::vector<double> v(s, 1.0);  // A^{k-1} 1
  for (int k = 1; k <= s; ++k) {
    gamma[k] = std::inner_product(tab.b.begin(), tab.b.end(), v.begin(), 0.0);
    std::vector<double> next(s, 0.0);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) next[i] += tab.coeff(i, j) * v[j];
    v.swap(next);
  }
  return gamma;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == Complex(0.0)) --deg;
  if (deg <= 1) return {};
  const int n = static_cast<int>(deg) - 1;
  if (n == 1) return {-coeffs[0] / coeffs[1]};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = coeffs[n];
  for (int r = 1; r < n; ++r) companion(r, r - 1) = 1.0;
  for (int r = 0; r < n; ++r) companion(r, n - 1) = -coeffs[r] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigensolve failed");
  std::vector<Complex> roots(n);
  for (int r = 0; r < n; ++r) roots[r] = solver.eigenvalues()[r];
  return roots;
}

namespace {

// Reorders `next` so that next[k] continues branch k (minimal total jump).
void match_branches(const std::vector<Complex>& prev, std::vector<Complex>& next) {
  std::vector<std::size_t> perm(next.size()), best;
  std::iota(perm.begin(), perm.end(), 0);
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t k = 0; k < perm.size(); ++k) cost += std::abs(prev[k] - next[perm[k]]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Complex> out(next.size());
  for (std::size_t k = 0; k < next.size(); ++k) out[k] = next[best[k]];
  next.swap(out);
}

}  // namespace

StabilityCurve rk_region_boundary(const ButcherTableau& tab, int n_samples) {
  if (n_samples < 16) throw std::invalid_argument("need at least 16 samples");
  const std::vector<double> gamma = rk_stability_polynomial(tab);
  std::vector<std::vector<Complex>> branches;  // [sample][branch]
  for (int m = 0; m <= n_samples; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / n_samples;
    std::vector<Complex> c(gamma.begin(), gamma.end());
    c[0] -= std::polar(1.0, theta);
    std::vector<Complex> roots = polynomial_roots(c);
    if (!branches.empty()) match_branches(branches.back(), roots);
    branches.push_back(std::move(roots));
  }
  const std::size_t nb = branches.front().size();
  // branch k ends (theta = 2 pi) on the start of branch successor[k]
  std::vector<std::size_t> successor(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < nb; ++q) {
      const double d = std::abs(branches.back()[k] - branches.front()[q]);
      if (d < best) {
        best = d;
        successor[k] = q;
      }
    }
  }
  StabilityCurve curve{StabilityCurve::Kind::RkBoundary, {}};
  std::vector<bool> used(nb, false);
  for (std::size_t start = 0; start < nb; ++start) {
    if (used[start]) continue;
    const std::size_t loop_begin = curve.points.size();
    for (std::size_t k = start; !used[k]; k = successor[k]) {
      used[k] = true;
      for (int m = 0; m < n_samples; ++m) curve.points.push_back(branches[m][k]);
    }
    curve.points.push_back(curve.points[loop_begin]);  // close the loop
  }
  return curve;
}

MultistepPolys ab_polys(int steps) {
  if (steps < 1 || steps > 5) throw std::invalid_argument("Adams-Bashforth steps must be in 1..5");
  std::vector<double> times(steps);
  for (int j = 0; j < steps; ++j) times[j] = -static_cast<double>(j);
  const std::vector<double> beta = ab_coefficients(times, 1.0);
  MultistepPolys p;
  p.rho_coeffs.assign(steps + 1, 0.0);
  p.rho_coeffs[steps] = 1.0;
  p.rho_coeffs[steps - 1] = -1.0;
  p.sigma_coeffs.assign(steps + 1, 0.0);
  for (int j = 0; j < steps; ++j) p.sigma_coeffs[steps - 1 - j] = beta[j];
  return p;
}

namespace {

Complex eval_poly(const std::vector<double>& c, Complex x) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

StabilityCurve ab_root_locus(const MultistepPolys& polys, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("need at least 2 samples");
  StabilityCurve curve{StabilityCurve::Kind::AbRootLocus, {}};
  curve.points.reserve(n_samples + 1);
  for (int m = 0; m <= n_samples; ++m) {
    const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * m / n_samples);
    curve.points.push_back(eval_poly(polys.rho_coeffs, zeta) / eval_poly(polys.sigma_coeffs, zeta));
  }
  return curve;
}

StabilityCurve advection_spectrum(int n, double epsilon) {
  if (n < 3) throw std::invalid_argument("spectrum needs n >= 3");
  StabilityCurve curve{StabilityCurve::Kind::Spectrum, {}};
  curve.points.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double w = 2.0 * std::numbers::pi * j / n;
    curve.points.emplace_back(-epsilon * (1.0 - std::cos(w)), -std::sin(w));
  }
  return curve;
}

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  const auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

namespace {

// hull vertices plus edge midpoints
std::vector<Complex> hull_probe_points(const StabilityCurve& spectrum) {
  const std::vector<Complex> hull = convex_hull(spectrum.points);
  std::vector<Complex> probe = hull;
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const Complex a = hull[k], b = hull[(k + 1) % hull.size()];
    if (hull.size() > 1) probe.push_back(0.5 * (a + b));
  }
  return probe;
}

bool rk_stable(const ButcherTableau& tab, const std::vector<Complex>& probe, double dt) {
  return std::all_of(probe.begin(), probe.end(), [&](Complex lam) {
    return std::abs(rk_stability_function(tab, dt * lam)) <= 1.0 + 1e-12;
  });
}

bool lmm_stable(const MultistepPolys& polys, const std::vector<Complex>& probe, double dt) {
  for (Complex lam : probe) {
    const Complex z = dt * lam;
    std::vector<Complex> c(polys.rho_coeffs.size());
    for (std::size_t d = 0; d < c.size(); ++d) c[d] = polys.rho_coeffs[d] - z * polys.sigma_coeffs[d];
    for (Complex zeta : polynomial_roots(c))
      if (std::abs(zeta) > 1.0 + 1e-10) return false;
  }
  return true;
}

template <class Stable>
double bisect_max_dt(Stable stable) {
  double lo = 1e-8;
  if (!stable(lo)) return 0.0;
  double hi = lo;
  while (stable(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) return lo;
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double max_stable_dt(const ButcherTableau& tab, const StabilityCurve& spectrum) {
  const auto probe = hull_probe_points(spectrum);
  return bisect_max_dt([&](double dt) { return rk_stable(tab, probe, dt); });
}

double max_stable_dt(const MultistepPolys& polys, const StabilityCurve& spectrum) {
  const auto probe = hull_probe_points(spectrum);
  return bisect_max_dt([&](double dt) { return lmm_stable(polys, probe, dt); });
}

HullStability stable_on_hull(const ButcherTableau& tab, const StabilityCurve& spectrum, double dt) {
  const auto probe = hull_probe_points(spectrum);
  return {rk_stable(tab, probe, dt), max_stable_dt(tab, spectrum)};
}

HullStability stable_on_hull(const MultistepPolys& polys, const StabilityCurve& spectrum,
                             double dt) {
  const auto probe = hull_probe_points(spectrum);
  return {lmm_stable(polys, probe, dt), max_stable_dt(polys, spectrum)};
}

}  // namespace allmach
