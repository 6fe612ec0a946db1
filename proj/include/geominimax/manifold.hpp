#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "geominimax/rng.hpp"

namespace geominimax {

enum class Shape { kVector, kUnitVector, kSpdMatrix, kPair };

std::string to_string(Shape shape);

/// A point of some manifold: flat coordinates interpreted by the owning
/// Manifold (row-major matrix entries for SPD, concatenated blocks for pairs).
struct Point {
  Shape shape = Shape::kVector;
  std::vector<double> coords;

  friend bool operator==(const Point&, const Point&) = default;
};

/// A tangent vector together with the point it is attached to. Arithmetic
/// between tangents requires identical bases.
struct Tangent {
  Point base;
  std::vector<double> coords;

  friend bool operator==(const Tangent&, const Tangent&) = default;
};

Tangent operator+(const Tangent& u, const Tangent& v);
Tangent operator-(const Tangent& u, const Tangent& v);
Tangent operator-(const Tangent& u);
Tangent operator*(double s, const Tangent& v);

/// Membership tolerance for tangent spaces, applied after projection.
inline constexpr double kTangentTolerance = 1e-9;

/// Geometric interface shared by every manifold, plus the curvature metadata
/// (kappa_min <= kappa_max, domain diameter bound) consumed by the
/// distortion constants and the step-size rule.
///
/// Public operations validate shapes and tangent bases, then dispatch to the
/// *_impl hooks. Instances are immutable and are shared via
/// std::shared_ptr<const Manifold>.
class Manifold {
 public:
  virtual ~Manifold() = default;
  Manifold(const Manifold&) = delete;
  Manifold& operator=(const Manifold&) = delete;

  virtual std::string name() const = 0;
  virtual Shape shape() const = 0;
  /// Intrinsic dimension (size of an orthonormal tangent basis).
  virtual std::size_t dimension() const = 0;
  /// Number of coordinates in a point or tangent.
  virtual std::size_t coord_size() const = 0;

  double kappa_min() const noexcept { return kappa_min_; }
  double kappa_max() const noexcept { return kappa_max_; }
  double diameter_bound() const noexcept { return diameter_bound_; }

  /// Largest tangent norm accepted by exp (injectivity-radius guard).
  virtual double exp_guard() const { return std::numeric_limits<double>::infinity(); }

  virtual bool contains(const Point& x) const = 0;
  bool is_tangent(const Point& x, std::span<const double> coords) const;

  /// Builds a tangent at x by projecting `coords` onto T_x, then asserts
  /// membership within kTangentTolerance.
  Tangent tangent(const Point& x, std::vector<double> coords) const;
  Tangent zero(const Point& x) const;

  Point exp(const Point& x, const Tangent& v) const;
  Tangent log(const Point& x, const Point& y) const;
  Tangent transport(const Point& x, const Point& y, const Tangent& v) const;
  double distance(const Point& x, const Point& y) const;
  double inner(const Point& x, const Tangent& u, const Tangent& v) const;
  double norm(const Point& x, const Tangent& v) const;

  /// Orthonormal basis of T_x. The default runs Gram-Schmidt (in the
  /// Riemannian metric) over the projected canonical coordinate vectors.
  virtual std::vector<Tangent> tangent_basis(const Point& x) const;

  /// Random point within diameter_bound / 2 of the manifold's canonical
  /// centre, so any three samples form a triangle with sides <= diameter.
  virtual Point random_point(Rng& rng) const = 0;
  /// Uniformly oriented unit tangent at x.
  Tangent random_unit_tangent(const Point& x, Rng& rng) const;

 protected:
  /// Validates kappa_min <= kappa_max and diameter_bound > 0; when
  /// `enforce_positive_curvature_diameter` also requires
  /// diameter_bound < pi / (2 sqrt(kappa_max)) whenever kappa_max > 0.
  Manifold(double kappa_min, double kappa_max, double diameter_bound,
           bool enforce_positive_curvature_diameter = true);

  void check_point(const Point& x, const char* op) const;
  void check_tangent(const Point& x, const Tangent& v, const char* op) const;

  virtual Point exp_impl(const Point& x, const Tangent& v) const = 0;
  virtual Tangent log_impl(const Point& x, const Point& y) const = 0;
  virtual Tangent transport_impl(const Point& x, const Point& y, const Tangent& v) const = 0;
  virtual double distance_impl(const Point& x, const Point& y) const;
  virtual double inner_impl(const Point& x, const Tangent& u, const Tangent& v) const = 0;
  virtual std::vector<double> project_impl(const Point& x, std::span<const double> v) const = 0;
  /// Residual of the tangent-space condition (0 when exactly tangent).
  virtual double tangent_residual(const Point& x, std::span<const double> v) const = 0;

 private:
  double kappa_min_;
  double kappa_max_;
  double diameter_bound_;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

/// M x N with componentwise geometry. Points and tangents concatenate the
/// component coordinates; distance is sqrt(d_A^2 + d_B^2); curvature bounds
/// are the min / max of the factors and the diameter bound is
/// sqrt(D_A^2 + D_B^2).
class ProductManifold final : public Manifold {
 public:
  ProductManifold(ManifoldPtr first, ManifoldPtr second);

  std::string name() const override;
  Shape shape() const override { return Shape::kPair; }
  std::size_t dimension() const override;
  std::size_t coord_size() const override;
  bool contains(const Point& x) const override;
  std::vector<Tangent> tangent_basis(const Point& x) const override;
  Point random_point(Rng& rng) const override;

  const ManifoldPtr& first() const noexcept { return first_; }
  const ManifoldPtr& second() const noexcept { return second_; }

  Point pair(const Point& a, const Point& b) const;
  Tangent pair(const Tangent& u, const Tangent& v) const;
  Point first_of(const Point& p) const;
  Point second_of(const Point& p) const;
  Tangent first_of(const Tangent& t) const;
  Tangent second_of(const Tangent& t) const;

 protected:
  Point exp_impl(const Point& x, const Tangent& v) const override;
  Tangent log_impl(const Point& x, const Point& y) const override;
  Tangent transport_impl(const Point& x, const Point& y, const Tangent& v) const override;
  double distance_impl(const Point& x, const Point& y) const override;
  double inner_impl(const Point& x, const Tangent& u, const Tangent& v) const override;
  std::vector<double> project_impl(const Point& x, std::span<const double> v) const override;
  double tangent_residual(const Point& x, std::span<const double> v) const override;

 private:
  ManifoldPtr first_;
  ManifoldPtr second_;
};

std::shared_ptr<const ProductManifold> product(ManifoldPtr a, ManifoldPtr b);

}  // namespace geominimax
