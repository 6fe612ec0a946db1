#include "geominimax/solvers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "geominimax/error.hpp"
#include "geominimax/geometry_constants.hpp"

namespace geominimax {

SolverState initial_state(const PointPair& start, double eta) {
  if (!(eta > 0.0)) raise(ErrorKind::kParameter, "solver: step size must be positive");
  SolverState s;
  s.current = start;
  s.extrapolated = start;
  s.average = start;
  s.eta = eta;
  return s;
}

std::pair<Tangent, Tangent> current_gradients(const MinimaxProblem& p, SolverState& s) {
  if (!s.grad_x_current || s.grad_x_current->base != s.current.x) {
    s.grad_x_current = p.grad_x(s.current.x, s.current.y);
  }
  if (!s.grad_y_current || s.grad_y_current->base != s.current.y) {
    s.grad_y_current = p.grad_y(s.current.x, s.current.y);
  }
  return {*s.grad_x_current, *s.grad_y_current};
}

SolverState rceg_step(const MinimaxProblem& p, SolverState s) {
  const Manifold& mx = p.min_space();
  const Manifold& my = p.max_space();
  const double eta = s.eta;
  const auto [gx, gy] = current_gradients(p, s);
  const Point& x = s.current.x;
  const Point& y = s.current.y;

  Point w = mx.exp(x, -eta * gx);
  Point z = my.exp(y, eta * gy);

  const Tangent gxw = p.grad_x(w, z);
  const Tangent gyz = p.grad_y(w, z);
  Point x_next = mx.exp(w, -eta * gxw + mx.log(w, x));
  Point y_next = my.exp(z, eta * gyz + my.log(z, y));

  SolverState out;
  out.t = s.t + 1;
  out.current = PointPair{std::move(x_next), std::move(y_next)};
  out.extrapolated = PointPair{std::move(w), std::move(z)};
  out.average = std::move(s.average);
  out.eta = eta;
  return out;
}

SolverState rgda_step(const MinimaxProblem& p, SolverState s) {
  const auto [gx, gy] = current_gradients(p, s);
  PointPair next{p.min_space().exp(s.current.x, -s.eta * gx),
                 p.max_space().exp(s.current.y, s.eta * gy)};
  SolverState out;
  out.t = s.t + 1;
  out.current = next;
  out.extrapolated = std::move(next);
  out.average = std::move(s.average);
  out.eta = s.eta;
  return out;
}

PointPair geodesic_average_update(const ProductManifold& m, const PointPair& average,
                                  const PointPair& next, std::size_t count) {
  if (count == 0) return next;
  const double w = 1.0 / static_cast<double>(count + 1);
  const Manifold& a = *m.first();
  const Manifold& b = *m.second();
  return PointPair{a.exp(average.x, w * a.log(average.x, next.x)),
                   b.exp(average.y, w * b.log(average.y, next.y))};
}

GdResult riemannian_gd(const Manifold& m, const ScalarFn& phi, const GradientFn& grad,
                       const Point& x0, const GdOptions& options) {
  if (!(options.eta > 0.0)) raise(ErrorKind::kParameter, "riemannian_gd: eta must be positive");
  GdResult r;
  r.point = x0;
  r.value = phi(x0);
  if (!std::isfinite(r.value)) raise(ErrorKind::kDiverged, "riemannian_gd: non-finite initial value");
  int increases = 0;
  for (;;) {
    const Tangent g = grad(r.point);
    r.grad_norm = m.norm(r.point, g);
    if (r.grad_norm <= options.tol) {
      r.converged = true;
      return r;
    }
    if (r.iterations >= options.max_iters) return r;
    Point next = m.exp(r.point, -options.eta * g);
    const double v = phi(next);
    if (!std::isfinite(v)) raise(ErrorKind::kDiverged, "riemannian_gd: non-finite value");
    increases = v > r.value ? increases + 1 : 0;
    if (increases >= 10) {
      std::ostringstream msg;
      msg << "riemannian_gd: value increased for 10 consecutive steps (eta = " << options.eta << ")";
      raise(ErrorKind::kDiverged, msg.str());
    }
    if (std::isfinite(options.escape_radius) && m.distance(x0, next) > options.escape_radius) {
      std::ostringstream msg;
      msg << "riemannian_gd: iterate left the ball of radius " << options.escape_radius << " around its start";
      raise(ErrorKind::kDiverged, msg.str());
    }
    r.point = std::move(next);
    r.value = v;
    ++r.iterations;
  }
}

double certified_gap(const MinimaxProblem& p, const PointPair& at) {
  if (!p.known_saddle) raise(ErrorKind::kContract, "certified_gap: problem has no known saddle");
  const auto& s = *p.known_saddle;
  return p.value(at.x, s.y) - p.value(s.x, at.y);
}

GapEstimate estimate_duality_gap(const MinimaxProblem& p, const PointPair& at, const GdOptions& inner) {
  GapEstimate out;
  if (p.known_saddle) out.certified_lower = certified_gap(p, at);
  try {
    const GdResult up = riemannian_gd(
        p.max_space(), [&](const Point& y) { return -p.value(at.x, y); },
        [&](const Point& y) { return -p.grad_y(at.x, y); }, at.y, inner);
    const GdResult down = riemannian_gd(
        p.min_space(), [&](const Point& x) { return p.value(x, at.y); },
        [&](const Point& x) { return p.grad_x(x, at.y); }, at.x, inner);
    out.inner_iterations = up.iterations + down.iterations;
    if (!up.converged || !down.converged) {
      std::ostringstream msg;
      msg << "inner " << (!up.converged ? "ascent" : "descent") << " did not reach tolerance "
          << inner.tol << " within " << inner.max_iters << " iterations (unbounded slice?)";
      out.diagnostic = msg.str();
      return out;
    }
    out.gap = std::max(0.0, -up.value - down.value);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kContract || e.kind() == ErrorKind::kParameter) throw;
    out.diagnostic = e.what();
  }
  return out;
}

std::string to_string(Algorithm a) { return a == Algorithm::kRceg ? "rceg" : "rgda"; }
std::string to_string(GapPoint g) { return g == GapPoint::kAverage ? "average" : "last"; }
std::string to_string(RunStatus s) { return s == RunStatus::kCompleted ? "completed" : "diverged"; }

namespace {

bool is_divergence_signal(ErrorKind k) {
  switch (k) {
    case ErrorKind::kStepTooLong:
    case ErrorKind::kNoUniqueGeodesic:
    case ErrorKind::kDomain:
    case ErrorKind::kNumericalFailure:
    case ErrorKind::kEvaluation:
    case ErrorKind::kDiverged:
      return true;
    default:
      return false;
  }
}

}  // namespace

Trace run(const MinimaxProblem& p, const RunOptions& o) {
  if (o.iterations == 0) raise(ErrorKind::kParameter, "run: iteration budget must be >= 1");
  if (o.record_every == 0) raise(ErrorKind::kParameter, "run: record_every must be >= 1");
  if (o.gap_every && *o.gap_every == 0) raise(ErrorKind::kParameter, "run: gap_every must be >= 1");

  Trace trace;
  trace.tau_m = tau(bounds_of(p.min_space()));
  trace.tau_n = tau(bounds_of(p.max_space()));
  if (o.eta) {
    trace.eta = *o.eta;
  } else {
    if (!p.smoothness_l) {
      raise(ErrorKind::kParameter, "run: automatic step size needs the problem's smoothness constant");
    }
    trace.eta = rceg_step_size(*p.smoothness_l, trace.tau_m, trace.tau_n);
  }

  GdOptions inner;
  if (o.inner) {
    inner = *o.inner;
  } else if (o.gap_every) {
    if (!p.smoothness_l) {
      raise(ErrorKind::kParameter, "run: gap estimation needs the problem's smoothness constant");
    }
  }

  const std::optional<PointPair> reference = o.reference ? o.reference : p.known_saddle;
  const double scale = reference ? std::max(1.0, p.distance(o.start, *reference)) : 1.0;
  if (!o.inner && o.gap_every) {
    inner = GdOptions{1.0 / (2.0 * *p.smoothness_l), 10 * o.iterations, 1e-8, o.divergence_factor * scale};
  }
  const auto clock_start = std::chrono::steady_clock::now();

  SolverState s = initial_state(o.start, trace.eta);
  trace.final_current = s.current;
  trace.final_average = s.average;

  auto diverge = [&](std::string why) {
    trace.status = RunStatus::kDiverged;
    trace.diagnostic = std::move(why);
  };

  auto record = [&](SolverState& st) {
    IterationRecord r;
    r.t = st.t;
    r.value = p.value(st.current.x, st.current.y);
    const auto [gx, gy] = current_gradients(p, st);
    r.grad_norm_x = p.min_space().norm(st.current.x, gx);
    r.grad_norm_y = p.max_space().norm(st.current.y, gy);
    if (reference) r.dist_to_ref = p.distance(st.current, *reference);
    if (p.known_saddle) r.certified_gap = certified_gap(p, st.average);
    if (o.gap_every && st.t % *o.gap_every == 0) {
      const PointPair& at = o.gap_point == GapPoint::kAverage ? st.average : st.current;
      const GapEstimate g = estimate_duality_gap(p, at, inner);
      r.gap_estimate = g.gap;
      if (!g.gap) ++trace.gap_failures;
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          clock_start)
                    .count();
    if (!std::isfinite(r.value)) throw Error(ErrorKind::kDiverged, "non-finite objective value");
    trace.records.push_back(r);
    if (o.on_record) o.on_record(trace.records.back());
  };

  for (std::size_t step = 1; step <= o.iterations; ++step) {
    try {
      SolverState next = o.algorithm == Algorithm::kRceg ? rceg_step(p, std::move(s)) : rgda_step(p, std::move(s));
      next.average = geodesic_average_update(*p.domain, next.average, next.extrapolated, step - 1);
      s = std::move(next);
      trace.iterations_completed = step;
      trace.final_current = s.current;
      trace.final_average = s.average;

      const double drift = p.distance(s.current, o.start);
      if (!std::isfinite(drift) || drift > o.divergence_factor * scale) {
        std::ostringstream msg;
        msg << "iterate drifted " << drift << " from the start (limit "
            << o.divergence_factor * scale << ") at t = " << step;
        if (std::isfinite(drift)) record(s);
        diverge(msg.str());
        break;
      }
      if (step % o.record_every == 0 || step == o.iterations) record(s);
    } catch (const Error& e) {
      if (!is_divergence_signal(e.kind())) throw;
      std::ostringstream msg;
      msg << "t = " << step << ": " << e.what();
      diverge(msg.str());
      break;
    }
  }
  return trace;
}

}  // namespace geominimax
