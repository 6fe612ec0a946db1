#include "geominimax/problems.hpp"

#include <cmath>
#include <sstream>

#include "geominimax/error.hpp"

namespace geominimax {

double operator_norm_estimate(const Matrix& b) {
  const std::size_t m = b.cols();
  if (m == 0 || b.rows() == 0) return 0.0;
  const Matrix bt = b.transpose();
  // Deterministic, non-degenerate start vector.
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i % 7);
  double sigma2 = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const double len = norm2(v);
    if (len == 0.0) return 0.0;
    for (double& c : v) c /= len;
    std::vector<double> w = bt * std::span<const double>(b * std::span<const double>(v));
    const double next = dot(v, w);
    v = std::move(w);
    if (std::abs(next - sigma2) <= 1e-15 * next) {
      sigma2 = next;
      break;
    }
    sigma2 = next;
  }
  return std::sqrt(std::max(0.0, sigma2));
}

MinimaxProblem euclidean_quadratic(const Matrix& b, double diameter_bound) {
  auto mx = make_euclidean(b.rows(), diameter_bound);
  auto my = make_euclidean(b.cols(), diameter_bound);
  MinimaxProblem p;
  p.name = "euclidean_quadratic";
  p.domain = product(mx, my);
  p.value = [b](const Point& x, const Point& y) {
    return dot(x.coords, b * std::span<const double>(y.coords));
  };
  p.grad_x = [b](const Point& x, const Point& y) {
    return Tangent{x, b * std::span<const double>(y.coords)};
  };
  const Matrix bt = b.transpose();
  p.grad_y = [bt](const Point& x, const Point& y) {
    return Tangent{y, bt * std::span<const double>(x.coords)};
  };
  p.smoothness_l = operator_norm_estimate(b);
  p.known_saddle = PointPair{Point{Shape::kVector, std::vector<double>(b.rows(), 0.0)},
                             Point{Shape::kVector, std::vector<double>(b.cols(), 0.0)}};
  return p;
}

MinimaxProblem spd_bilinear(std::shared_ptr<const SpdManifold> m, const Point& x0, const Point& y0) {
  if (!m->contains(x0) || !m->contains(y0)) {
    raise(ErrorKind::kDomain, "spd_bilinear: anchors must be SPD");
  }
  MinimaxProblem p;
  p.name = "spd_bilinear";
  p.domain = product(m, m);
  p.value = [m, x0, y0](const Point& x, const Point& y) {
    return trace_of_product(m->matrix(m->log(x, x0)), m->matrix(m->log(y, y0)));
  };
  p.grad_x = [m, x0, y0](const Point& x, const Point& y) {
    const Matrix coupling = m->matrix(m->log(y, y0));
    const ScalarFn phi = [&](const Point& xp) {
      return trace_of_product(m->matrix(m->log(xp, x0)), coupling);
    };
    return numeric_riemannian_grad(*m, phi, x, default_fd_step(x));
  };
  p.grad_y = [m, x0, y0](const Point& x, const Point& y) {
    const Matrix coupling = m->matrix(m->log(x, x0));
    const ScalarFn phi = [&](const Point& yp) {
      return trace_of_product(coupling, m->matrix(m->log(yp, y0)));
    };
    return numeric_riemannian_grad(*m, phi, y, default_fd_step(y));
  };
  p.known_saddle = PointPair{x0, y0};
  return p;
}

void RobustPcaInstance::validate() const {
  if (data.empty()) raise(ErrorKind::kParameter, "robust_pca: need at least one data matrix");
  if (!(alpha > 0.0)) raise(ErrorKind::kParameter, "robust_pca: alpha must be positive");
  SpdManifold spd(n);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].size() != n || !spd.contains(spd.point(data[i]))) {
      raise(ErrorKind::kDomain, "robust_pca: data matrix " + std::to_string(i) + " is not SPD of size n");
    }
  }
}

MinimaxProblem robust_pca(const RobustPcaInstance& inst, double sphere_diameter, double spd_diameter) {
  inst.validate();
  auto sphere = make_sphere(inst.n, sphere_diameter);
  auto spd = make_spd(inst.n, spd_diameter);
  std::vector<Point> data;
  for (const SymMatrix& d : inst.data) data.push_back(spd->point(d));
  const double weight = inst.alpha / static_cast<double>(data.size());

  MinimaxProblem p;
  p.name = "robust_pca";
  p.domain = product(sphere, spd);
  p.value = [spd, data, weight](const Point& x, const Point& mp) {
    const Matrix m = spd->matrix(mp);
    double penalty = 0.0;
    for (const Point& d : data) {
      const double dist = spd->distance(mp, d);
      penalty += dist * dist;
    }
    return -dot(x.coords, m * std::span<const double>(x.coords)) - weight * penalty;
  };
  p.grad_x = [spd](const Point& x, const Point& mp) {
    const Matrix m = spd->matrix(mp);
    std::vector<double> mx = m * std::span<const double>(x.coords);
    const double q = dot(x.coords, mx);
    for (std::size_t i = 0; i < mx.size(); ++i) mx[i] = -2.0 * (mx[i] - q * x.coords[i]);
    return Tangent{x, std::move(mx)};
  };
  p.grad_y = [spd, data, weight](const Point& x, const Point& mp) {
    const Matrix m = spd->matrix(mp);
    const std::vector<double> mx = m * std::span<const double>(x.coords);
    const std::size_t n = mx.size();
    Tangent g = spd->zero(mp);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g.coords[i * n + j] = -mx[i] * mx[j];
    for (const Point& d : data) g = g + (2.0 * weight) * spd->log(mp, d);
    return g;
  };
  return p;
}

MinimaxProblem augmented_lagrangian(ManifoldPtr m, ScalarField g, std::vector<ScalarField> h,
                                    double alpha, double lambda_diameter) {
  if (h.empty()) raise(ErrorKind::kParameter, "augmented_lagrangian: need at least one constraint");
  if (!(alpha >= 0.0)) raise(ErrorKind::kParameter, "augmented_lagrangian: alpha must be >= 0");
  auto multipliers = make_euclidean(h.size(), lambda_diameter);

  MinimaxProblem p;
  p.name = "augmented_lagrangian";
  p.domain = product(m, multipliers);
  p.value = [g, h, alpha](const Point& x, const Point& lambda) {
    double v = g.value(x);
    for (std::size_t i = 0; i < h.size(); ++i) v += lambda.coords[i] * h[i].value(x);
    return v - 0.5 * alpha * dot(lambda.coords, lambda.coords);
  };
  p.grad_x = [g, h](const Point& x, const Point& lambda) {
    Tangent out = g.grad(x);
    for (std::size_t i = 0; i < h.size(); ++i) out = out + lambda.coords[i] * h[i].grad(x);
    return out;
  };
  p.grad_y = [h, alpha](const Point& x, const Point& lambda) {
    Tangent out{lambda, std::vector<double>(h.size())};
    for (std::size_t i = 0; i < h.size(); ++i) {
      out.coords[i] = h[i].value(x) - alpha * lambda.coords[i];
    }
    return out;
  };
  return p;
}

ScalarField half_squared_distance(std::shared_ptr<const SpdManifold> m, const Point& centre) {
  return {[m, centre](const Point& x) {
            const double d = m->distance(x, centre);
            return 0.5 * d * d;
          },
          [m, centre](const Point& x) { return -m->log(x, centre); }};
}

ScalarField log_det(std::shared_ptr<const SpdManifold> m, double offset) {
  return {[m, offset](const Point& x) {
            double s = 0.0;
            for (double l : sym_eig(m->matrix(x)).lambda) s += std::log(l);
            return s - offset;
          },
          // Euclidean gradient x^{-1}; the affine-invariant metric maps it to x.
          [](const Point& x) { return Tangent{x, x.coords}; }};
}

ScalarField trace_minus(std::shared_ptr<const SpdManifold> m, double offset) {
  return {[m, offset](const Point& x) { return m->matrix(x).matrix().trace() - offset; },
          [m](const Point& x) {
            const Matrix a = m->matrix(x).matrix();
            return m->tangent(x, SymMatrix(a * a));
          }};
}

}  // namespace geominimax
