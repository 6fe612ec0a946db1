#include "geominimax/checks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "geominimax/config.hpp"
#include "geominimax/error.hpp"
#include "geominimax/experiment.hpp"
#include "geominimax/geometry_constants.hpp"
#include "geominimax/manifolds.hpp"
#include "geominimax/problems.hpp"
#include "geominimax/rng.hpp"
#include "geominimax/solvers.hpp"

namespace geominimax {

bool CheckReport::all_pass() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

std::string format_line(const CheckLine& line) {
  const auto shortest = [](double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
  };
  std::ostringstream o;
  o << line.name << " trials=" << line.trials << " worst=" << shortest(line.worst)
    << " tol=" << shortest(line.tolerance) << ' ' << (line.pass ? "PASS" : "FAIL");
  return o.str();
}

namespace {

CheckLine make_line(std::string name, std::size_t trials, double worst, double tolerance) {
  return CheckLine{std::move(name), trials, worst, tolerance, std::isfinite(worst) && worst <= tolerance};
}

struct NamedManifold {
  std::string label;
  ManifoldPtr m;
};

// Tangent of norm in [0, min(0.9 guard, 3)) in a uniform direction.
Tangent random_tangent(const Manifold& m, const Point& x, Rng& rng) {
  const double r_max = std::min(0.9 * m.exp_guard(), 3.0);
  return rng.uniform(0.0, r_max) * m.random_unit_tangent(x, rng);
}

void manifold_lines(const NamedManifold& nm, std::size_t trials, Rng& rng, CheckReport& report) {
  const Manifold& m = *nm.m;
  double round_trip = 0.0;
  double isometry = 0.0;
  double log_transport = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Point x = m.random_point(rng);
    const Tangent v = random_tangent(m, x, rng);
    const Tangent back = m.log(x, m.exp(x, v));
    round_trip = std::max(round_trip, m.norm(x, back - v) / std::max(1.0, m.norm(x, v)));

    const Point y = m.random_point(rng);
    const auto basis = m.tangent_basis(x);
    std::vector<Tangent> moved;
    moved.reserve(basis.size());
    for (const auto& e : basis) moved.push_back(m.transport(x, y, e));
    for (std::size_t a = 0; a < moved.size(); ++a) {
      for (std::size_t b = a; b < moved.size(); ++b) {
        const double target = a == b ? 1.0 : 0.0;
        isometry = std::max(isometry, std::abs(m.inner(y, moved[a], moved[b]) - target));
      }
    }

    const Point w = m.exp(x, v);
    const Tangent identity = m.log(w, x) + m.transport(x, w, v);
    log_transport = std::max(log_transport, m.norm(w, identity) / std::max(1.0, m.norm(x, v)));
  }
  report.lines.push_back(make_line("manifolds." + nm.label + ".exp_log_round_trip", trials, round_trip,
                                   kManifoldCheckTolerance));
  report.lines.push_back(make_line("manifolds." + nm.label + ".transport_isometry", trials, isometry,
                                   kManifoldCheckTolerance));
  report.lines.push_back(make_line("manifolds." + nm.label + ".log_transport_identity", trials, log_transport,
                                   kManifoldCheckTolerance));
}

double relative_error(const Manifold& m, const Point& x, const Tangent& analytic, const Tangent& numeric) {
  const double scale = std::max({m.norm(x, analytic), m.norm(x, numeric), 1e-12});
  return m.norm(x, analytic - numeric) / scale;
}

void gradient_lines(const std::string& label, const MinimaxProblem& p, std::size_t trials, Rng& rng,
                    CheckReport& report) {
  const Manifold& mx = p.min_space();
  const Manifold& my = p.max_space();
  double worst_x = 0.0;
  double worst_y = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Point x = mx.random_point(rng);
    const Point y = my.random_point(rng);
    const Tangent nx = numeric_riemannian_grad(
        mx, [&](const Point& xx) { return p.value(xx, y); }, x, default_fd_step(x));
    const Tangent ny = numeric_riemannian_grad(
        my, [&](const Point& yy) { return p.value(x, yy); }, y, default_fd_step(y));
    worst_x = std::max(worst_x, relative_error(mx, x, p.grad_x(x, y), nx));
    worst_y = std::max(worst_y, relative_error(my, y, p.grad_y(x, y), ny));
  }
  report.lines.push_back(make_line("gradients." + label + ".grad_x", trials, worst_x, kGradientCheckTolerance));
  report.lines.push_back(make_line("gradients." + label + ".grad_y", trials, worst_y, kGradientCheckTolerance));
}

ExperimentConfig rate_config(ProblemKind problem, std::size_t n, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.problem = problem;
  cfg.n = n;
  cfg.seed = seed;
  cfg.eta.reset();
  cfg.gap_every.reset();
  cfg.mu = 0.5;
  cfg.l = 2.0;
  return cfg;
}

// Runs RCEG for `horizon` steps and compares, at every T, the gap of the
// averaged pair against (d^2(x0, x) + d^2(y0, y)) / (eta T) for the saddle and
// for `probes` extra comparison pairs (x, y).
void rate_lines(const std::string& label, const ExperimentSetup& setup, std::size_t horizon,
                const std::vector<PointPair>& probes, CheckReport& report) {
  const MinimaxProblem& p = setup.problem;
  const PointPair saddle = *p.known_saddle;
  const double eta = rceg_step_size(*p.smoothness_l, tau(bounds_of(p.min_space())), tau(bounds_of(p.max_space())));
  const auto radius2 = [&](const PointPair& c) {
    const double dx = p.min_space().distance(setup.start.x, c.x);
    const double dy = p.max_space().distance(setup.start.y, c.y);
    return dx * dx + dy * dy;
  };
  const double r_saddle = radius2(saddle);
  std::vector<double> r_probe;
  for (const auto& q : probes) r_probe.push_back(radius2(q));

  SolverState s = initial_state(setup.start, eta);
  double worst_saddle = -std::numeric_limits<double>::infinity();
  double worst_probe = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= horizon; ++t) {
    s = rceg_step(p, std::move(s));
    s.average = geodesic_average_update(*p.domain, s.average, s.extrapolated, t - 1);
    const double scale = eta * static_cast<double>(t);
    worst_saddle = std::max(worst_saddle, certified_gap(p, s.average) * scale / r_saddle);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double gap = p.value(s.average.x, probes[i].y) - p.value(probes[i].x, s.average.y);
      worst_probe = std::max(worst_probe, gap * scale / r_probe[i]);
    }
  }
  report.lines.push_back(make_line("rate." + label + ".saddle_bound", horizon, worst_saddle, 1.0));
  if (!probes.empty()) {
    report.lines.push_back(make_line("rate." + label + ".localized_bound", horizon * probes.size(), worst_probe, 1.0));
  }
}

}  // namespace

CheckReport check_manifolds(std::size_t trials, std::uint64_t seed) {
  const std::vector<NamedManifold> spaces = {
      {"euclidean5", make_euclidean(5, 4.0)},
      {"sphere4", make_sphere(4, 1.5)},
      {"spd3", make_spd(3, 4.0)},
      {"spd3_x_sphere4", product(make_spd(3, 4.0), make_sphere(4, 1.5))},
  };
  CheckReport report;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    Rng rng = Rng::stream(seed, 100 + i);
    manifold_lines(spaces[i], trials, rng, report);
  }
  return report;
}

CheckReport check_triangles(std::size_t trials, std::uint64_t seed) {
  const std::vector<NamedManifold> spaces = {
      {"euclidean5", make_euclidean(5, 4.0)},
      {"sphere4", make_sphere(4, std::numbers::pi / 4.0)},
      {"spd3", make_spd(3, 4.0)},
  };
  CheckReport report;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    Rng rng = Rng::stream(seed, 200 + i);
    const TriangleReport t = check_triangle_comparison(*spaces[i].m, trials, rng);
    CheckLine lower = make_line("triangles." + spaces[i].label + ".lower_comparison", t.trials, t.worst_lower,
                                kTriangleSlack);
    lower.pass = lower.pass && t.violations_lower == 0;
    CheckLine upper = make_line("triangles." + spaces[i].label + ".upper_comparison", t.trials, t.worst_upper,
                                kTriangleSlack);
    upper.pass = upper.pass && t.violations_upper == 0;
    report.lines.push_back(lower);
    report.lines.push_back(upper);
  }
  return report;
}

CheckReport check_gradients(std::size_t trials, std::uint64_t seed) {
  CheckReport report;
  Rng data = Rng::stream(seed, 300);

  {
    Matrix b = gaussian_matrix(5, 4, data);
    gradient_lines("euclidean_quadratic", euclidean_quadratic(b, 4.0), trials, data, report);
  }
  for (const double alpha : {0.5, 2.0}) {
    RobustPcaInstance inst;
    inst.n = 4;
    inst.alpha = alpha;
    for (int i = 0; i < 3; ++i) inst.data.push_back(random_spd(4, 0.2, 4.5, data));
    std::ostringstream label;
    label << "robust_pca_alpha" << alpha;
    gradient_lines(label.str(), robust_pca(inst, 1.5, 3.0), trials, data, report);
  }
  {
    auto m = make_spd(2, 3.0);
    gradient_lines("augmented_lagrangian_trace",
                   augmented_lagrangian(m, half_squared_distance(m, m->identity()), {trace_minus(m, 2.0)}, 0.1),
                   trials, data, report);
  }
  {
    auto m = make_spd(3, 3.0);
    const Point c = m->point(random_spd(3, 0.2, 4.5, data));
    gradient_lines("augmented_lagrangian_logdet",
                   augmented_lagrangian(m, half_squared_distance(m, c), {log_det(m), trace_minus(m, 3.0)}, 0.5),
                   trials, data, report);
  }
  return report;
}

CheckReport check_rate(std::size_t trials, std::uint64_t seed) {
  CheckReport report;
  {
    const ExperimentSetup setup = build_experiment(rate_config(ProblemKind::kEuclideanQuadratic, 20, seed));
    Rng rng = Rng::stream(seed, 400);
    std::vector<PointPair> probes;
    for (int i = 0; i < 10; ++i) {
      probes.push_back(PointPair{setup.problem.min_space().random_point(rng),
                                 setup.problem.max_space().random_point(rng)});
    }
    rate_lines("euclidean_quadratic_n20", setup, trials, probes, report);
  }
  {
    const ExperimentSetup setup = build_experiment(rate_config(ProblemKind::kSpdBilinear, 5, seed));
    rate_lines("spd_bilinear_n5", setup, trials, {}, report);
  }
  return report;
}

CheckReport run_check(std::string_view target, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) raise(ErrorKind::kConfig, "check: trials must be >= 1");
  if (target == "manifolds") return check_manifolds(trials, seed);
  if (target == "triangles") return check_triangles(trials, seed);
  if (target == "gradients") return check_gradients(trials, seed);
  if (target == "rate") return check_rate(trials, seed);
  raise(ErrorKind::kConfig, "check: unknown target '" + std::string(target) +
                                "' (expected manifolds, triangles, gradients or rate)");
}

}  // namespace geominimax
