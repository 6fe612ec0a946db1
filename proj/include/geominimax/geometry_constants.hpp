#pragma once

#include <cstddef>

#include "geominimax/manifold.hpp"
#include "geominimax/rng.hpp"

namespace geominimax {

/// Curvature range of a domain together with the side length / diameter c
/// at which the distortion constants are evaluated.
struct CurvatureBounds {
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double c = 1.0;

  /// Throws ErrorKind::kParameter unless kappa_min <= min(0, kappa_max),
  /// c > 0 and, for kappa_max > 0, c < pi / (2 sqrt(kappa_max)).
  void validate() const;
};

CurvatureBounds bounds_of(const Manifold& m);

/// sqrt(-kappa) c coth(sqrt(-kappa) c); 1 at kappa = 0. Requires kappa <= 0.
double zeta(double kappa, double c);

/// Upper-curvature distortion: equals zeta for kappa <= 0 and
/// sqrt(kappa) c cot(sqrt(kappa) c) in (0, 1] for kappa > 0, where
/// sqrt(kappa) c must stay below pi / 2.
double xi(double kappa, double c);

/// zeta(kappa_min, c) / xi(kappa_max, c) >= 1.
double tau(const CurvatureBounds& b);

/// min(1/sqrt(tau_m), 1/sqrt(tau_n)) / (2 l).
double rceg_step_size(double l, double tau_m, double tau_n);

struct TriangleReport {
  std::size_t trials = 0;
  std::size_t violations_lower = 0;  // a^2 <= zeta b^2 + c^2 - 2bc cos A broken
  std::size_t violations_upper = 0;  // a^2 >= xi b^2 + c^2 - 2bc cos A broken
  double worst_lower = 0.0;  // max of a^2 - (zeta b^2 + c^2 - 2bc cos A)
  double worst_upper = 0.0;  // max of (xi b^2 + c^2 - 2bc cos A) - a^2
  double max_slack = 0.0;    // max(worst_lower, worst_upper)
};

inline constexpr double kTriangleSlack = 1e-7;

/// Samples geodesic triangles with every side <= m.diameter_bound() and
/// checks both comparison inequalities at vertex x, where b = d(x, y),
/// c = d(x, z), a = d(y, z) and A is the angle between Log_x(y) and Log_x(z).
/// zeta uses m.kappa_min() at the side c. xi uses m.kappa_max() at the
/// diameter bound D: with kappa_max > 0 the upper inequality does not hold
/// with xi evaluated at the side length itself.
TriangleReport check_triangle_comparison(const Manifold& m, std::size_t trials, Rng& rng);

}  // namespace geominimax
