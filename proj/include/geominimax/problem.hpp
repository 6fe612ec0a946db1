#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "geominimax/manifold.hpp"
#include "geominimax/rng.hpp"

namespace geominimax {

using ScalarFn = std::function<double(const Point&)>;
using GradientFn = std::function<Tangent(const Point&)>;

/// A point of M x N kept as its two blocks.
struct PointPair {
  Point x;
  Point y;

  friend bool operator==(const PointPair&, const PointPair&) = default;
};

/// min over x in M, max over y in N of f(x, y).
///
/// grad_x and grad_y are Riemannian partial gradients (tangent at x and at y
/// respectively). Evaluations must be pure; solvers may call them from any
/// thread.
struct MinimaxProblem {
  std::string name;
  std::shared_ptr<const ProductManifold> domain;
  std::function<double(const Point&, const Point&)> value;
  std::function<Tangent(const Point&, const Point&)> grad_x;
  std::function<Tangent(const Point&, const Point&)> grad_y;
  /// Geodesic smoothness constant L; empty until known or estimated.
  std::optional<double> smoothness_l;
  std::optional<PointPair> known_saddle;

  const Manifold& min_space() const { return *domain->first(); }
  const Manifold& max_space() const { return *domain->second(); }
  Point join(const PointPair& p) const { return domain->pair(p.x, p.y); }
  double distance(const PointPair& a, const PointPair& b) const;
};

/// Gradient norm allowed at a declared saddle point.
inline constexpr double kSaddleGradientTolerance = 1e-6;

/// Throws ErrorKind::kContract if a declared saddle has gradient norm above
/// kSaddleGradientTolerance in either block.
void validate_saddle(const MinimaxProblem& p);

/// Central-difference Riemannian gradient of phi at x:
///   sum_j (phi(Exp_x(eps e_j)) - phi(Exp_x(-eps e_j))) / (2 eps) e_j
/// over the orthonormal basis m.tangent_basis(x). Throws
/// ErrorKind::kEvaluation on a non-finite evaluation.
Tangent numeric_riemannian_grad(const Manifold& m, const ScalarFn& phi, const Point& x, double eps);

/// 1e-5 * max(1, ||coords(x)||).
double default_fd_step(const Point& x);

struct SmoothnessSampling {
  PointPair centre;
  double radius = 1.0;
  std::size_t pairs = 100;
  double safety = 2.0;
};

/// Empirical L: safety * max over random pairs p, q near `centre` of
///   max(|gx(p) - T gx(q)|, |gy(p) - T gy(q)|) / (d_M + d_N)
/// with T the parallel transport from q to p.
double estimate_smoothness(const MinimaxProblem& p, const SmoothnessSampling& s, Rng& rng);

/// Random point at geodesic distance <= radius from `centre`.
Point sample_near(const Manifold& m, const Point& centre, double radius, Rng& rng);

}  // namespace geominimax
