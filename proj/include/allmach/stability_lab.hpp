#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "allmach/time_integrators.hpp"

namespace allmach {

using Complex = std::complex<double>;

/// Sampled curve in the complex plane. A boundary made of several closed
/// loops is stored loop after loop.
struct StabilityCurve {
  enum class Kind { RkBoundary, AbRootLocus, Spectrum };
  Kind kind = Kind::Spectrum;
  std::vector<Complex> points;
};

std::string_view curve_kind_name(StabilityCurve::Kind kind);

/// Characteristic polynomials of a linear multistep method,
///   rho(zeta) = sum_d rho_coeffs[d] zeta^d,  sigma likewise.
struct MultistepPolys {
  std::vector<double> rho_coeffs;
  std::vector<double> sigma_coeffs;

  int steps() const { return static_cast<int>(rho_coeffs.size()) - 1; }
};

/// R(z) = 1 + z b^T (I - zA)^{-1} 1.
Complex rk_stability_function(const ButcherTableau& tableau, Complex z);

/// Coefficients (increasing degree) of R(z) for an explicit tableau:
/// gamma_0 = 1, gamma_k = b^T A^{k-1} 1.
std::vector<double> rk_stability_polynomial(const ButcherTableau& tableau);

/// Roots of sum_d coeffs[d] z^d (trailing zero leading coefficients are
/// stripped) from the eigenvalues of the companion matrix.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

/// All solutions z of R(z) = exp(i theta) over n_samples angles, chained
/// into closed loops by continuation in theta.
StabilityCurve rk_region_boundary(const ButcherTableau& tableau, int n_samples);

/// Adams-Bashforth with `steps` old values (1..5): rho = z^k - z^(k-1) and
/// sigma from the constant-step coefficients.
MultistepPolys ab_polys(int steps);

/// z(theta) = rho(e^{i theta}) / sigma(e^{i theta}) at n_samples angles.
StabilityCurve ab_root_locus(const MultistepPolys& polys, int n_samples);

/// Eigenvalues of the periodic semidiscrete linear advection operator
/// (unit speed, unit cells) blending upwind (epsilon = 1) and central
/// (epsilon = 0) differences.
StabilityCurve advection_spectrum(int n, double epsilon);

/// Convex hull in counter-clockwise order (collinear points dropped).
std::vector<Complex> convex_hull(std::vector<Complex> points);

struct HullStability {
  bool stable = false;
  /// Largest dt for which the method is stable on the hull (bisection).
  double max_dt = 0.0;
};

HullStability stable_on_hull(const ButcherTableau& tableau, const StabilityCurve& spectrum,
                             double dt);
HullStability stable_on_hull(const MultistepPolys& polys, const StabilityCurve& spectrum,
                             double dt);

/// Largest stable dt alone (the margin of stable_on_hull).
double max_stable_dt(const ButcherTableau& tableau, const StabilityCurve& spectrum);
double max_stable_dt(const MultistepPolys& polys, const StabilityCurve& spectrum);

}  // namespace allmach
