#include "geominimax/manifold.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "geominimax/error.hpp"
#include "geominimax/matrix.hpp"

namespace geominimax {

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::kVector: return "vector";
    case Shape::kUnitVector: return "unit-vector";
    case Shape::kSpdMatrix: return "spd-matrix";
    case Shape::kPair: return "pair";
  }
  return "unknown";
}

namespace {

void require_same_base(const Tangent& u, const Tangent& v, const char* op) {
  if (u.base != v.base || u.coords.size() != v.coords.size()) {
    raise(ErrorKind::kContract, std::string(op) + ": tangent vectors live at different points");
  }
}

}  // namespace

Tangent operator+(const Tangent& u, const Tangent& v) {
  require_same_base(u, v, "tangent +");
  Tangent out = u;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += v.coords[i];
  return out;
}

Tangent operator-(const Tangent& u, const Tangent& v) {
  require_same_base(u, v, "tangent -");
  Tangent out = u;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] -= v.coords[i];
  return out;
}

Tangent operator-(const Tangent& u) { return -1.0 * u; }

Tangent operator*(double s, const Tangent& v) {
  Tangent out = v;
  for (double& c : out.coords) c *= s;
  return out;
}

Manifold::Manifold(double kappa_min, double kappa_max, double diameter_bound,
                   bool enforce_positive_curvature_diameter)
    : kappa_min_(kappa_min), kappa_max_(kappa_max), diameter_bound_(diameter_bound) {
  if (!(kappa_min <= kappa_max)) {
    raise(ErrorKind::kParameter, "Manifold: kappa_min must not exceed kappa_max");
  }
  if (!(diameter_bound > 0.0)) {
    raise(ErrorKind::kParameter, "Manifold: diameter_bound must be positive");
  }
  if (enforce_positive_curvature_diameter && kappa_max > 0.0 &&
      !(diameter_bound < std::numbers::pi / (2.0 * std::sqrt(kappa_max)))) {
    std::ostringstream msg;
    msg << "Manifold: diameter_bound " << diameter_bound
        << " must be below pi / (2 sqrt(kappa_max)) = "
        << std::numbers::pi / (2.0 * std::sqrt(kappa_max));
    raise(ErrorKind::kParameter, msg.str());
  }
}

void Manifold::check_point(const Point& x, const char* op) const {
  if (x.shape != shape() || x.coords.size() != coord_size()) {
    std::ostringstream msg;
    msg << op << ": point of shape " << to_string(x.shape) << " with " << x.coords.size()
        << " coordinates does not belong to " << name();
    raise(ErrorKind::kContract, msg.str());
  }
}

void Manifold::check_tangent(const Point& x, const Tangent& v, const char* op) const {
  check_point(x, op);
  if (v.base != x) {
    raise(ErrorKind::kContract, std::string(op) + ": tangent vector is not based at the given point");
  }
  if (!is_tangent(x, v.coords)) {
    raise(ErrorKind::kContract, std::string(op) + ": vector is not in the tangent space");
  }
}

bool Manifold::is_tangent(const Point& x, std::span<const double> coords) const {
  return coords.size() == coord_size() && tangent_residual(x, coords) <= kTangentTolerance;
}

Tangent Manifold::tangent(const Point& x, std::vector<double> coords) const {
  check_point(x, "tangent");
  if (coords.size() != coord_size()) {
    raise(ErrorKind::kContract, "tangent: coordinate count mismatch for " + name());
  }
  auto projected = project_impl(x, coords);
  if (tangent_residual(x, projected) > kTangentTolerance) {
    raise(ErrorKind::kContract, "tangent: projection failed to reach the tangent space");
  }
  return Tangent{x, std::move(projected)};
}

Tangent Manifold::zero(const Point& x) const {
  check_point(x, "zero");
  return Tangent{x, std::vector<double>(coord_size(), 0.0)};
}

Point Manifold::exp(const Point& x, const Tangent& v) const {
  check_tangent(x, v, "exp");
  const double guard = exp_guard();
  if (std::isfinite(guard)) {
    const double len = norm(x, v);
    if (!(len <= guard)) {
      std::ostringstream msg;
      msg << "exp on " << name() << ": tangent norm " << len << " exceeds guard " << guard;
      raise(ErrorKind::kStepTooLong, msg.str());
    }
  }
  return exp_impl(x, v);
}

Tangent Manifold::log(const Point& x, const Point& y) const {
  check_point(x, "log");
  check_point(y, "log");
  return log_impl(x, y);
}

Tangent Manifold::transport(const Point& x, const Point& y, const Tangent& v) const {
  check_tangent(x, v, "transport");
  check_point(y, "transport");
  return transport_impl(x, y, v);
}

double Manifold::distance(const Point& x, const Point& y) const {
  check_point(x, "distance");
  check_point(y, "distance");
  return distance_impl(x, y);
}

double Manifold::distance_impl(const Point& x, const Point& y) const {
  return norm(x, log_impl(x, y));
}

double Manifold::inner(const Point& x, const Tangent& u, const Tangent& v) const {
  check_point(x, "inner");
  if (u.base != x || v.base != x) {
    raise(ErrorKind::kContract, "inner: tangent vectors are not based at the given point");
  }
  return inner_impl(x, u, v);
}

double Manifold::norm(const Point& x, const Tangent& v) const {
  return std::sqrt(std::max(0.0, inner(x, v, v)));
}

std::vector<Tangent> Manifold::tangent_basis(const Point& x) const {
  check_point(x, "tangent_basis");
  std::vector<Tangent> basis;
  const std::size_t dim = dimension();
  for (std::size_t j = 0; j < coord_size() && basis.size() < dim; ++j) {
    std::vector<double> e(coord_size(), 0.0);
    e[j] = 1.0;
    Tangent v{x, project_impl(x, e)};
    // Two Gram-Schmidt passes keep the basis orthonormal to roundoff.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Tangent& b : basis) {
        const double c = inner_impl(x, b, v);
        for (std::size_t i = 0; i < v.coords.size(); ++i) v.coords[i] -= c * b.coords[i];
      }
    }
    const double len = std::sqrt(std::max(0.0, inner_impl(x, v, v)));
    if (len < 1e-8) continue;
    for (double& c : v.coords) c /= len;
    basis.push_back(std::move(v));
  }
  if (basis.size() != dim) {
    raise(ErrorKind::kNumericalFailure, "tangent_basis: could not span the tangent space of " + name());
  }
  return basis;
}

Tangent Manifold::random_unit_tangent(const Point& x, Rng& rng) const {
  // Coordinates in an orthonormal basis make the direction uniform in the
  // Riemannian metric, not just in the ambient coordinates.
  const auto basis = tangent_basis(x);
  std::vector<double> c(basis.size());
  for (double& v : c) v = rng.normal();
  const double len = norm2(c);
  Tangent out = zero(x);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < out.coords.size(); ++i)
      out.coords[i] += (c[j] / len) * basis[j].coords[i];
  return out;
}

// ---------------------------------------------------------------------------

ProductManifold::ProductManifold(ManifoldPtr first, ManifoldPtr second)
    : Manifold(std::min(first->kappa_min(), second->kappa_min()),
               std::max(first->kappa_max(), second->kappa_max()),
               std::hypot(first->diameter_bound(), second->diameter_bound()),
               /*enforce_positive_curvature_diameter=*/false),
      first_(std::move(first)),
      second_(std::move(second)) {}

std::string ProductManifold::name() const {
  return first_->name() + " x " + second_->name();
}

std::size_t ProductManifold::dimension() const {
  return first_->dimension() + second_->dimension();
}

std::size_t ProductManifold::coord_size() const {
  return first_->coord_size() + second_->coord_size();
}

bool ProductManifold::contains(const Point& x) const {
  return x.shape == Shape::kPair && x.coords.size() == coord_size() &&
         first_->contains(first_of(x)) && second_->contains(second_of(x));
}

Point ProductManifold::pair(const Point& a, const Point& b) const {
  if (a.shape != first_->shape() || a.coords.size() != first_->coord_size() ||
      b.shape != second_->shape() || b.coords.size() != second_->coord_size()) {
    raise(ErrorKind::kContract, "pair: components do not match " + name());
  }
  Point p{Shape::kPair, a.coords};
  p.coords.insert(p.coords.end(), b.coords.begin(), b.coords.end());
  return p;
}

Tangent ProductManifold::pair(const Tangent& u, const Tangent& v) const {
  Tangent t{pair(u.base, v.base), u.coords};
  t.coords.insert(t.coords.end(), v.coords.begin(), v.coords.end());
  return t;
}

Point ProductManifold::first_of(const Point& p) const {
  const auto n = static_cast<std::ptrdiff_t>(first_->coord_size());
  return Point{first_->shape(), std::vector<double>(p.coords.begin(), p.coords.begin() + n)};
}

Point ProductManifold::second_of(const Point& p) const {
  const auto n = static_cast<std::ptrdiff_t>(first_->coord_size());
  return Point{second_->shape(), std::vector<double>(p.coords.begin() + n, p.coords.end())};
}

Tangent ProductManifold::first_of(const Tangent& t) const {
  const auto n = static_cast<std::ptrdiff_t>(first_->coord_size());
  return Tangent{first_of(t.base), std::vector<double>(t.coords.begin(), t.coords.begin() + n)};
}

Tangent ProductManifold::second_of(const Tangent& t) const {
  const auto n = static_cast<std::ptrdiff_t>(first_->coord_size());
  return Tangent{second_of(t.base), std::vector<double>(t.coords.begin() + n, t.coords.end())};
}

Point ProductManifold::exp_impl(const Point& x, const Tangent& v) const {
  return pair(first_->exp(first_of(x), first_of(v)), second_->exp(second_of(x), second_of(v)));
}

Tangent ProductManifold::log_impl(const Point& x, const Point& y) const {
  return pair(first_->log(first_of(x), first_of(y)), second_->log(second_of(x), second_of(y)));
}

Tangent ProductManifold::transport_impl(const Point& x, const Point& y, const Tangent& v) const {
  return pair(first_->transport(first_of(x), first_of(y), first_of(v)),
              second_->transport(second_of(x), second_of(y), second_of(v)));
}

double ProductManifold::distance_impl(const Point& x, const Point& y) const {
  return std::hypot(first_->distance(first_of(x), first_of(y)),
                    second_->distance(second_of(x), second_of(y)));
}

double ProductManifold::inner_impl(const Point& x, const Tangent& u, const Tangent& v) const {
  const Point a = first_of(x);
  const Point b = second_of(x);
  return first_->inner(a, first_of(u), first_of(v)) + second_->inner(b, second_of(u), second_of(v));
}

std::vector<double> ProductManifold::project_impl(const Point& x, std::span<const double> v) const {
  const std::size_t n = first_->coord_size();
  const Point a = first_of(x);
  const Point b = second_of(x);
  auto pa = first_->tangent(a, std::vector<double>(v.begin(), v.begin() + n)).coords;
  auto pb = second_->tangent(b, std::vector<double>(v.begin() + n, v.end())).coords;
  pa.insert(pa.end(), pb.begin(), pb.end());
  return pa;
}

double ProductManifold::tangent_residual(const Point& x, std::span<const double> v) const {
  const std::size_t n = first_->coord_size();
  const bool ok = first_->is_tangent(first_of(x), v.subspan(0, n)) &&
                  second_->is_tangent(second_of(x), v.subspan(n));
  return ok ? 0.0 : std::numeric_limits<double>::infinity();
}

std::vector<Tangent> ProductManifold::tangent_basis(const Point& x) const {
  check_point(x, "tangent_basis");
  const Point a = first_of(x);
  const Point b = second_of(x);
  std::vector<Tangent> basis;
  const Tangent za = first_->zero(a);
  const Tangent zb = second_->zero(b);
  for (const Tangent& e : first_->tangent_basis(a)) basis.push_back(pair(e, zb));
  for (const Tangent& e : second_->tangent_basis(b)) basis.push_back(pair(za, e));
  return basis;
}

Point ProductManifold::random_point(Rng& rng) const {
  Point a = first_->random_point(rng);
  Point b = second_->random_point(rng);
  return pair(a, b);
}

std::shared_ptr<const ProductManifold> product(ManifoldPtr a, ManifoldPtr b) {
  return std::make_shared<const ProductManifold>(std::move(a), std::move(b));
}

}  // namespace geominimax
