#pragma once

#include <cstddef>
#include <memory>

#include "geominimax/manifold.hpp"
#include "geominimax/matrix_kernel.hpp"

namespace geominimax {

/// R^n with the dot product. Flat: kappa_min = kappa_max = 0. The diameter
/// bound only feeds the distortion constants (which are 1 here anyway).
class EuclideanSpace final : public Manifold {
 public:
  explicit EuclideanSpace(std::size_t n, double diameter_bound = 10.0);

  std::string name() const override;
  Shape shape() const override { return Shape::kVector; }
  std::size_t dimension() const override { return n_; }
  std::size_t coord_size() const override { return n_; }
  bool contains(const Point& x) const override;
  std::vector<Tangent> tangent_basis(const Point& x) const override;
  Point random_point(Rng& rng) const override;

  Point point(std::vector<double> coords) const;

 protected:
  Point exp_impl(const Point& x, const Tangent& v) const override;
  Tangent log_impl(const Point& x, const Point& y) const override;
  Tangent transport_impl(const Point& x, const Point& y, const Tangent& v) const override;
  double distance_impl(const Point& x, const Point& y) const override;
  double inner_impl(const Point& x, const Tangent& u, const Tangent& v) const override;
  std::vector<double> project_impl(const Point& x, std::span<const double> v) const override;
  double tangent_residual(const Point& x, std::span<const double> v) const override;

 private:
  std::size_t n_;
};

/// Unit sphere in R^n (intrinsic dimension n - 1), curvature +1.
///
/// kappa_min is reported as 0 rather than +1: the distortion constants need a
/// nonpositive lower bound, and zeta(0, c) = 1 is the tightest valid value.
/// exp rejects steps longer than pi - 1e-6 and log / distance / transport
/// reject pairs whose angle exceeds the same guard.
class Sphere final : public Manifold {
 public:
  static constexpr double kGuardMargin = 1e-6;

  explicit Sphere(std::size_t n, double diameter_bound = 1.0);

  std::string name() const override;
  Shape shape() const override { return Shape::kUnitVector; }
  std::size_t dimension() const override { return n_ - 1; }
  std::size_t coord_size() const override { return n_; }
  double exp_guard() const override;
  bool contains(const Point& x) const override;
  Point random_point(Rng& rng) const override;

  /// Normalizes `coords` onto the sphere.
  Point point(std::vector<double> coords) const;

 protected:
  Point exp_impl(const Point& x, const Tangent& v) const override;
  Tangent log_impl(const Point& x, const Point& y) const override;
  Tangent transport_impl(const Point& x, const Point& y, const Tangent& v) const override;
  double distance_impl(const Point& x, const Point& y) const override;
  double inner_impl(const Point& x, const Tangent& u, const Tangent& v) const override;
  std::vector<double> project_impl(const Point& x, std::span<const double> v) const override;
  double tangent_residual(const Point& x, std::span<const double> v) const override;

 private:
  /// Geodesic angle between unit vectors, with the antipodal guard applied.
  double guarded_angle(const Point& x, const Point& y, const char* op) const;

  std::size_t n_;
};

/// Symmetric positive definite n x n matrices with the affine-invariant
/// metric <u, v>_x = tr(x^-1 u x^-1 v). Hadamard (kappa_max = 0) with
/// sectional curvature bounded below by -1/2.
class SpdManifold final : public Manifold {
 public:
  static constexpr double kKappaMin = -0.5;

  explicit SpdManifold(std::size_t n, double diameter_bound = 4.0);

  std::string name() const override;
  Shape shape() const override { return Shape::kSpdMatrix; }
  std::size_t dimension() const override { return n_ * (n_ + 1) / 2; }
  std::size_t coord_size() const override { return n_ * n_; }
  std::size_t matrix_size() const noexcept { return n_; }
  bool contains(const Point& x) const override;
  std::vector<Tangent> tangent_basis(const Point& x) const override;
  Point random_point(Rng& rng) const override;

  Point point(const SymMatrix& a) const;
  Point identity() const;
  SymMatrix matrix(const Point& x) const;
  SymMatrix matrix(const Tangent& v) const;
  Tangent tangent(const Point& x, const SymMatrix& v) const;
  using Manifold::tangent;

 protected:
  Point exp_impl(const Point& x, const Tangent& v) const override;
  Tangent log_impl(const Point& x, const Point& y) const override;
  Tangent transport_impl(const Point& x, const Point& y, const Tangent& v) const override;
  double distance_impl(const Point& x, const Point& y) const override;
  double inner_impl(const Point& x, const Tangent& u, const Tangent& v) const override;
  std::vector<double> project_impl(const Point& x, std::span<const double> v) const override;
  double tangent_residual(const Point& x, std::span<const double> v) const override;

 private:
  std::size_t n_;
};

std::shared_ptr<const EuclideanSpace> make_euclidean(std::size_t n, double diameter_bound = 10.0);
std::shared_ptr<const Sphere> make_sphere(std::size_t n, double diameter_bound = 1.0);
std::shared_ptr<const SpdManifold> make_spd(std::size_t n, double diameter_bound = 4.0);

}  // namespace geominimax
