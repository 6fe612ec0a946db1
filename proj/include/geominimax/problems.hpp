#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "geominimax/manifolds.hpp"
#include "geominimax/matrix.hpp"
#include "geominimax/matrix_kernel.hpp"
#include "geominimax/problem.hpp"

namespace geominimax {

/// Largest singular value of b by power iteration on b^T b.
double operator_norm_estimate(const Matrix& b);

/// f(x, y) = x^T b y on R^n x R^m. Saddle at the origin, L = ||b||_2.
MinimaxProblem euclidean_quadratic(const Matrix& b, double diameter_bound = 10.0);

/// f(x, y) = tr(Log_x(x0) Log_y(y0)) on P(n) x P(n), the SPD analogue of a
/// bilinear coupling. Saddle at (x0, y0). Gradients come from
/// numeric_riemannian_grad with eps = default_fd_step(x).
MinimaxProblem spd_bilinear(std::shared_ptr<const SpdManifold> m, const Point& x0, const Point& y0);

struct RobustPcaInstance {
  std::vector<SymMatrix> data;  // M_1 .. M_k, each SPD
  double alpha = 1.0;
  std::size_t n = 0;

  void validate() const;
};

/// f(x, M) = -x^T M x - (alpha / k) sum_i d^2(M, M_i) on Sphere(n) x P(n),
/// minimized over the unit vector x and maximized over M.
MinimaxProblem robust_pca(const RobustPcaInstance& inst, double sphere_diameter,
                          double spd_diameter);

/// Scalar function on a manifold with its Riemannian gradient.
struct ScalarField {
  ScalarFn value;
  GradientFn grad;
};

/// f(x, lambda) = g(x) + <h(x), lambda> - (alpha/2) |lambda|^2 with the
/// multiplier lambda in R^{h.size()}. Minimized over x, maximized over lambda.
MinimaxProblem augmented_lagrangian(ManifoldPtr m, ScalarField g, std::vector<ScalarField> h,
                                    double alpha, double lambda_diameter = 10.0);

/// Building blocks on P(n) for augmented_lagrangian instances.
ScalarField half_squared_distance(std::shared_ptr<const SpdManifold> m, const Point& centre);
ScalarField log_det(std::shared_ptr<const SpdManifold> m, double offset = 0.0);  // log det x - offset
ScalarField trace_minus(std::shared_ptr<const SpdManifold> m, double offset);   // tr x - offset

}  // namespace geominimax
