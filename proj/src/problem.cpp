#include "geominimax/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geominimax/error.hpp"
#include "geominimax/matrix.hpp"

namespace geominimax {

double MinimaxProblem::distance(const PointPair& a, const PointPair& b) const {
  return std::hypot(min_space().distance(a.x, b.x), max_space().distance(a.y, b.y));
}

void validate_saddle(const MinimaxProblem& p) {
  if (!p.known_saddle) return;
  const auto& s = *p.known_saddle;
  const double gx = p.min_space().norm(s.x, p.grad_x(s.x, s.y));
  const double gy = p.max_space().norm(s.y, p.grad_y(s.x, s.y));
  if (gx > kSaddleGradientTolerance || gy > kSaddleGradientTolerance) {
    std::ostringstream msg;
    msg << p.name << ": declared saddle has gradient norms (" << gx << ", " << gy << ")";
    raise(ErrorKind::kContract, msg.str());
  }
}

double default_fd_step(const Point& x) { return 1e-5 * std::max(1.0, norm2(x.coords)); }

Tangent numeric_riemannian_grad(const Manifold& m, const ScalarFn& phi, const Point& x, double eps) {
  if (!(eps > 0.0)) raise(ErrorKind::kParameter, "numeric_riemannian_grad: eps must be positive");
  const auto basis = m.tangent_basis(x);
  Tangent g = m.zero(x);
  for (const Tangent& e : basis) {
    const double fp = phi(m.exp(x, eps * e));
    const double fm = phi(m.exp(x, -eps * e));
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      raise(ErrorKind::kEvaluation, "numeric_riemannian_grad: objective is not finite near x");
    }
    const double slope = (fp - fm) / (2.0 * eps);
    for (std::size_t i = 0; i < g.coords.size(); ++i) g.coords[i] += slope * e.coords[i];
  }
  return g;
}

Point sample_near(const Manifold& m, const Point& centre, double radius, Rng& rng) {
  const double r = std::min(radius, 0.9 * m.exp_guard()) * rng.uniform();
  return m.exp(centre, r * m.random_unit_tangent(centre, rng));
}

double estimate_smoothness(const MinimaxProblem& p, const SmoothnessSampling& s, Rng& rng) {
  if (s.pairs == 0 || !(s.radius > 0.0) || !(s.safety > 0.0)) {
    raise(ErrorKind::kParameter, "estimate_smoothness: need pairs >= 1, radius > 0, safety > 0");
  }
  const Manifold& mx = p.min_space();
  const Manifold& my = p.max_space();
  double worst = 0.0;
  for (std::size_t k = 0; k < s.pairs; ++k) {
    const Point x1 = sample_near(mx, s.centre.x, s.radius, rng);
    const Point y1 = sample_near(my, s.centre.y, s.radius, rng);
    const Point x2 = sample_near(mx, s.centre.x, s.radius, rng);
    const Point y2 = sample_near(my, s.centre.y, s.radius, rng);
    const double d = mx.distance(x1, x2) + my.distance(y1, y2);
    if (d <= 1e-12) continue;
    const Tangent dx = p.grad_x(x1, y1) - mx.transport(x2, x1, p.grad_x(x2, y2));
    const Tangent dy = p.grad_y(x1, y1) - my.transport(y2, y1, p.grad_y(x2, y2));
    worst = std::max(worst, std::max(mx.norm(x1, dx), my.norm(y1, dy)) / d);
  }
  if (!(worst > 0.0) || !std::isfinite(worst)) {
    raise(ErrorKind::kNumericalFailure, "estimate_smoothness: could not estimate a positive L");
  }
  return s.safety * worst;
}

}  // namespace geominimax
