#include "geominimax/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geominimax/error.hpp"

namespace geominimax {

// ---------------------------------------------------------------- Euclidean

EuclideanSpace::EuclideanSpace(std::size_t n, double diameter_bound)
    : Manifold(0.0, 0.0, diameter_bound), n_(n) {
  if (n == 0) raise(ErrorKind::kParameter, "EuclideanSpace: dimension must be positive");
}

std::string EuclideanSpace::name() const { return "Euclidean(" + std::to_string(n_) + ")"; }

bool EuclideanSpace::contains(const Point& x) const {
  return x.shape == Shape::kVector && x.coords.size() == n_ &&
         std::all_of(x.coords.begin(), x.coords.end(), [](double v) { return std::isfinite(v); });
}

Point EuclideanSpace::point(std::vector<double> coords) const {
  Point p{Shape::kVector, std::move(coords)};
  check_point(p, "EuclideanSpace::point");
  return p;
}

std::vector<Tangent> EuclideanSpace::tangent_basis(const Point& x) const {
  check_point(x, "tangent_basis");
  std::vector<Tangent> basis;
  for (std::size_t j = 0; j < n_; ++j) {
    std::vector<double> e(n_, 0.0);
    e[j] = 1.0;
    basis.push_back(Tangent{x, std::move(e)});
  }
  return basis;
}

Point EuclideanSpace::random_point(Rng& rng) const {
  const Point origin{Shape::kVector, std::vector<double>(n_, 0.0)};
  const Tangent u = random_unit_tangent(origin, rng);
  const double r = rng.uniform(0.0, 0.5 * diameter_bound());
  return exp_impl(origin, r * u);
}

Point EuclideanSpace::exp_impl(const Point& x, const Tangent& v) const {
  Point out = x;
  for (std::size_t i = 0; i < n_; ++i) out.coords[i] += v.coords[i];
  return out;
}

Tangent EuclideanSpace::log_impl(const Point& x, const Point& y) const {
  Tangent out{x, y.coords};
  for (std::size_t i = 0; i < n_; ++i) out.coords[i] -= x.coords[i];
  return out;
}

Tangent EuclideanSpace::transport_impl(const Point&, const Point& y, const Tangent& v) const {
  return Tangent{y, v.coords};
}

double EuclideanSpace::distance_impl(const Point& x, const Point& y) const {
  std::vector<double> d = y.coords;
  for (std::size_t i = 0; i < n_; ++i) d[i] -= x.coords[i];
  return norm2(d);
}

double EuclideanSpace::inner_impl(const Point&, const Tangent& u, const Tangent& v) const {
  return dot(u.coords, v.coords);
}

std::vector<double> EuclideanSpace::project_impl(const Point&, std::span<const double> v) const {
  return {v.begin(), v.end()};
}

double EuclideanSpace::tangent_residual(const Point&, std::span<const double>) const { return 0.0; }

// ------------------------------------------------------------------- Sphere

Sphere::Sphere(std::size_t n, double diameter_bound) : Manifold(0.0, 1.0, diameter_bound), n_(n) {
  if (n < 2) raise(ErrorKind::kParameter, "Sphere: ambient dimension must be at least 2");
}

std::string Sphere::name() const { return "Sphere(" + std::to_string(n_) + ")"; }

double Sphere::exp_guard() const { return std::numbers::pi - kGuardMargin; }

bool Sphere::contains(const Point& x) const {
  return x.shape == Shape::kUnitVector && x.coords.size() == n_ &&
         std::abs(norm2(x.coords) - 1.0) <= 1e-10;
}

Point Sphere::point(std::vector<double> coords) const {
  if (coords.size() != n_) raise(ErrorKind::kContract, "Sphere::point: wrong coordinate count");
  const double len = norm2(coords);
  if (!(len > 0.0) || !std::isfinite(len)) {
    raise(ErrorKind::kDomain, "Sphere::point: cannot normalize a zero or non-finite vector");
  }
  for (double& c : coords) c /= len;
  return Point{Shape::kUnitVector, std::move(coords)};
}

Point Sphere::random_point(Rng& rng) const {
  std::vector<double> e1(n_, 0.0);
  e1[0] = 1.0;
  const Point centre{Shape::kUnitVector, std::move(e1)};
  const Tangent u = random_unit_tangent(centre, rng);
  const double r = rng.uniform(0.0, 0.5 * diameter_bound());
  return exp_impl(centre, r * u);
}

Point Sphere::exp_impl(const Point& x, const Tangent& v) const {
  const double theta = norm2(v.coords);
  if (theta == 0.0) return x;
  const double c = std::cos(theta);
  const double s = std::sin(theta) / theta;
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = c * x.coords[i] + s * v.coords[i];
  return point(std::move(out));
}

double Sphere::guarded_angle(const Point& x, const Point& y, const char* op) const {
  // 2 asin(|x - y| / 2) is accurate at both small and large angles and is
  // exactly symmetric in (x, y).
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = x.coords[i] - y.coords[i];
  const double chord = std::min(2.0, norm2(d));
  const double theta = 2.0 * std::asin(0.5 * chord);
  if (theta > exp_guard()) {
    std::ostringstream msg;
    msg << op << " on " << name() << ": points are " << theta
        << " apart, beyond the unique-geodesic guard " << exp_guard();
    raise(ErrorKind::kNoUniqueGeodesic, msg.str());
  }
  return theta;
}

Tangent Sphere::log_impl(const Point& x, const Point& y) const {
  const double theta = guarded_angle(x, y, "log");
  if (theta == 0.0) return Tangent{x, std::vector<double>(n_, 0.0)};
  const double c = dot(x.coords, y.coords);
  std::vector<double> u(n_);
  for (std::size_t i = 0; i < n_; ++i) u[i] = y.coords[i] - c * x.coords[i];
  u = project_impl(x, u);
  const double len = norm2(u);
  if (len == 0.0) return Tangent{x, std::vector<double>(n_, 0.0)};
  for (double& v : u) v *= theta / len;
  return Tangent{x, std::move(u)};
}

Tangent Sphere::transport_impl(const Point& x, const Point& y, const Tangent& v) const {
  const Tangent u = log_impl(x, y);
  const double theta = norm2(u.coords);
  if (theta == 0.0) return Tangent{y, project_impl(y, v.coords)};
  // Rotate the component along the geodesic direction within span{x, u};
  // the orthogonal complement of that plane is carried unchanged.
  const double a = dot(u.coords, v.coords) / theta;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double uhat = u.coords[i] / theta;
    out[i] = v.coords[i] + (c - 1.0) * a * uhat - s * a * x.coords[i];
  }
  return Tangent{y, project_impl(y, out)};
}

double Sphere::distance_impl(const Point& x, const Point& y) const {
  return guarded_angle(x, y, "distance");
}

double Sphere::inner_impl(const Point&, const Tangent& u, const Tangent& v) const {
  return dot(u.coords, v.coords);
}

std::vector<double> Sphere::project_impl(const Point& x, std::span<const double> v) const {
  std::vector<double> out(v.begin(), v.end());
  const double c = dot(x.coords, out);
  for (std::size_t i = 0; i < n_; ++i) out[i] -= c * x.coords[i];
  return out;
}

double Sphere::tangent_residual(const Point& x, std::span<const double> v) const {
  return std::abs(dot(x.coords, v)) / std::max(1.0, norm2(v));
}

// ---------------------------------------------------------------------- SPD

namespace {

/// x^{1/2} and x^{-1/2} from a single eigendecomposition.
struct SpdRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
};

SpdRoots roots_of(const SymMatrix& x) {
  const SpectralDecomposition d = sym_eig(x);
  return {sym_fun(d, MatrixFunction::kSqrt).matrix(), sym_fun(d, MatrixFunction::kInvSqrt).matrix()};
}

}  // namespace

SpdManifold::SpdManifold(std::size_t n, double diameter_bound)
    : Manifold(kKappaMin, 0.0, diameter_bound), n_(n) {
  if (n == 0) raise(ErrorKind::kParameter, "SpdManifold: dimension must be positive");
}

std::string SpdManifold::name() const { return "SPD(" + std::to_string(n_) + ")"; }

bool SpdManifold::contains(const Point& x) const {
  if (x.shape != Shape::kSpdMatrix || x.coords.size() != n_ * n_) return false;
  const Matrix m(n_, n_, x.coords);
  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) return false;
  try {
    const auto d = sym_eig(SymMatrix(m));
    return d.lambda.back() > kPositivityFloor * std::max(1.0, d.lambda.front());
  } catch (const Error&) {
    return false;
  }
}

Point SpdManifold::point(const SymMatrix& a) const {
  if (a.size() != n_) raise(ErrorKind::kContract, "SpdManifold::point: wrong matrix size");
  return Point{Shape::kSpdMatrix, a.matrix().storage()};
}

Point SpdManifold::identity() const { return point(SymMatrix::identity(n_)); }

SymMatrix SpdManifold::matrix(const Point& x) const {
  check_point(x, "SpdManifold::matrix");
  return SymMatrix(Matrix(n_, n_, x.coords));
}

SymMatrix SpdManifold::matrix(const Tangent& v) const {
  if (v.coords.size() != n_ * n_) raise(ErrorKind::kContract, "SpdManifold::matrix: wrong size");
  return SymMatrix(Matrix(n_, n_, v.coords));
}

Tangent SpdManifold::tangent(const Point& x, const SymMatrix& v) const {
  return tangent(x, v.matrix().storage());
}

std::vector<Tangent> SpdManifold::tangent_basis(const Point& x) const {
  // Congruence by x^{1/2} maps a Frobenius-orthonormal basis of symmetric
  // matrices onto an orthonormal basis for the metric at x.
  const SpdRoots r = roots_of(matrix(x));
  std::vector<Tangent> basis;
  basis.reserve(dimension());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      Matrix e(n_, n_);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = std::numbers::sqrt2 / 2.0;
      }
      basis.push_back(Tangent{x, congruence(r.sqrt, SymMatrix(e)).matrix().storage()});
    }
  }
  return basis;
}

Point SpdManifold::random_point(Rng& rng) const {
  const Point centre = identity();
  const Tangent u = random_unit_tangent(centre, rng);
  const double r = rng.uniform(0.0, 0.5 * diameter_bound());
  return exp_impl(centre, r * u);
}

Point SpdManifold::exp_impl(const Point& x, const Tangent& v) const {
  const SpdRoots r = roots_of(matrix(x));
  const SymMatrix whitened = congruence(r.inv_sqrt, matrix(v));
  const SymMatrix e = sym_fun(whitened, MatrixFunction::kExp);
  return point(congruence(r.sqrt, e));
}

Tangent SpdManifold::log_impl(const Point& x, const Point& y) const {
  const SpdRoots r = roots_of(matrix(x));
  const SymMatrix whitened = congruence(r.inv_sqrt, matrix(y));
  const SymMatrix l = sym_fun(whitened, MatrixFunction::kLog);
  return Tangent{x, congruence(r.sqrt, l).matrix().storage()};
}

Tangent SpdManifold::transport_impl(const Point& x, const Point& y, const Tangent& v) const {
  const SpdRoots r = roots_of(matrix(x));
  const SymMatrix whitened = congruence(r.inv_sqrt, matrix(y));
  const SymMatrix half = sym_fun(whitened, MatrixFunction::kSqrt);
  const Matrix e = r.sqrt * half.matrix() * r.inv_sqrt;
  return Tangent{y, congruence(e, matrix(v)).matrix().storage()};
}

double SpdManifold::distance_impl(const Point& x, const Point& y) const {
  const SpdRoots r = roots_of(matrix(x));
  const auto d = sym_eig(congruence(r.inv_sqrt, matrix(y)));
  const double floor = kPositivityFloor * std::max(1.0, d.lambda.front());
  std::vector<double> logs(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!(d.lambda[i] > floor)) {
      raise(ErrorKind::kDomain, "distance on " + name() + ": argument is not positive definite");
    }
    logs[i] = std::log(d.lambda[i]);
  }
  return norm2(logs);
}

double SpdManifold::inner_impl(const Point& x, const Tangent& u, const Tangent& v) const {
  const SpdRoots r = roots_of(matrix(x));
  const SymMatrix a = congruence(r.inv_sqrt, matrix(u));
  const SymMatrix b = congruence(r.inv_sqrt, matrix(v));
  return frobenius_dot(a.matrix(), b.matrix());
}

std::vector<double> SpdManifold::project_impl(const Point&, std::span<const double> v) const {
  return SymMatrix(Matrix(n_, n_, std::vector<double>(v.begin(), v.end()))).matrix().storage();
}

double SpdManifold::tangent_residual(const Point&, std::span<const double> v) const {
  double asym = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      asym = std::max(asym, std::abs(v[i * n_ + j] - v[j * n_ + i]));
  return asym / std::max(1.0, norm2(v));
}

std::shared_ptr<const EuclideanSpace> make_euclidean(std::size_t n, double diameter_bound) {
  return std::make_shared<const EuclideanSpace>(n, diameter_bound);
}

std::shared_ptr<const Sphere> make_sphere(std::size_t n, double diameter_bound) {
  return std::make_shared<const Sphere>(n, diameter_bound);
}

std::shared_ptr<const SpdManifold> make_spd(std::size_t n, double diameter_bound) {
  return std::make_shared<const SpdManifold>(n, diameter_bound);
}

}  // namespace geominimax
