#include "geominimax/geometry_constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geominimax/error.hpp"

namespace geominimax {

namespace {

constexpr double kSeriesCutoff = 1e-4;

// x coth(x) = 1 + x^2/3 - x^4/45 + ...
double x_coth_x(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
  }
  return x / std::tanh(x);
}

// x cot(x) = 1 - x^2/3 - x^4/45 - ...
double x_cot_x(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 - x2 * x2 / 45.0;
  }
  return x / std::tan(x);
}

}  // namespace

void CurvatureBounds::validate() const {
  std::ostringstream msg;
  if (!(kappa_min <= 0.0)) {
    msg << "kappa_min must be <= 0 (got " << kappa_min << ")";
  } else if (!(kappa_min <= kappa_max)) {
    msg << "kappa_min " << kappa_min << " exceeds kappa_max " << kappa_max;
  } else if (!(c > 0.0)) {
    msg << "c must be positive (got " << c << ")";
  } else if (kappa_max > 0.0 && !(c < std::numbers::pi / (2.0 * std::sqrt(kappa_max)))) {
    msg << "c = " << c << " must be below pi / (2 sqrt(kappa_max)) for kappa_max = " << kappa_max;
  } else {
    return;
  }
  raise(ErrorKind::kParameter, "CurvatureBounds: " + msg.str());
}

CurvatureBounds bounds_of(const Manifold& m) {
  return {m.kappa_min(), m.kappa_max(), m.diameter_bound()};
}

double zeta(double kappa, double c) {
  if (!(kappa <= 0.0)) {
    raise(ErrorKind::kParameter, "zeta: kappa must be <= 0");
  }
  if (!(c > 0.0)) raise(ErrorKind::kParameter, "zeta: c must be positive");
  return x_coth_x(std::sqrt(-kappa) * c);
}

double xi(double kappa, double c) {
  if (!(c > 0.0)) raise(ErrorKind::kParameter, "xi: c must be positive");
  if (kappa <= 0.0) return x_coth_x(std::sqrt(-kappa) * c);
  const double x = std::sqrt(kappa) * c;
  if (!(x < std::numbers::pi / 2.0)) {
    std::ostringstream msg;
    msg << "xi: sqrt(kappa) c = " << x << " must be below pi/2";
    raise(ErrorKind::kDomain, msg.str());
  }
  return x_cot_x(x);
}

double tau(const CurvatureBounds& b) {
  b.validate();
  return zeta(b.kappa_min, b.c) / xi(b.kappa_max, b.c);
}

double rceg_step_size(double l, double tau_m, double tau_n) {
  if (!(l > 0.0)) raise(ErrorKind::kParameter, "rceg_step_size: l must be positive");
  if (!(tau_m >= 1.0) || !(tau_n >= 1.0)) {
    raise(ErrorKind::kParameter, "rceg_step_size: tau values must be >= 1");
  }
  return std::min(1.0 / std::sqrt(tau_m), 1.0 / std::sqrt(tau_n)) / (2.0 * l);
}

TriangleReport check_triangle_comparison(const Manifold& m, std::size_t trials, Rng& rng) {
  if (trials == 0) raise(ErrorKind::kParameter, "check_triangle_comparison: trials must be >= 1");
  const double diameter = m.diameter_bound();
  const std::size_t cap = 100 * trials;
  TriangleReport report;
  report.worst_lower = -std::numeric_limits<double>::infinity();
  report.worst_upper = -std::numeric_limits<double>::infinity();

  std::size_t draws = 0;
  while (report.trials < trials) {
    if (++draws > cap) {
      raise(ErrorKind::kDegenerateInput,
            "check_triangle_comparison: could not sample triangles within the diameter bound");
    }
    const Point x = m.random_point(rng);
    const Point y = m.random_point(rng);
    const Point z = m.random_point(rng);
    const double b = m.distance(x, y);
    const double c = m.distance(x, z);
    const double a = m.distance(y, z);
    if (b > diameter || c > diameter || a > diameter || b == 0.0 || c == 0.0) continue;

    const Tangent lb = m.log(x, y);
    const Tangent lc = m.log(x, z);
    const double cos_a =
        std::clamp(m.inner(x, lb, lc) / (m.norm(x, lb) * m.norm(x, lc)), -1.0, 1.0);
    const double law = c * c - 2.0 * b * c * cos_a;
    const double lower_gap = a * a - (zeta(m.kappa_min(), c) * b * b + law);
    const double upper_gap = (xi(m.kappa_max(), diameter) * b * b + law) - a * a;

    if (lower_gap > kTriangleSlack) ++report.violations_lower;
    if (upper_gap > kTriangleSlack) ++report.violations_upper;
    report.worst_lower = std::max(report.worst_lower, lower_gap);
    report.worst_upper = std::max(report.worst_upper, upper_gap);
    ++report.trials;
  }
  report.max_slack = std::max(report.worst_lower, report.worst_upper);
  return report;
}

}  // namespace geominimax
