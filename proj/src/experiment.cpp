#include "geominimax/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "geominimax/error.hpp"
#include "geominimax/geometry_constants.hpp"
#include "geominimax/manifolds.hpp"
#include "geominimax/problems.hpp"
#include "geominimax/rng.hpp"

namespace geominimax {

namespace {

constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kStartStream = 2;
constexpr std::uint64_t kSmoothnessStream = 3;

std::vector<double> gaussian_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (double& e : v) e = rng.normal();
  return v;
}

double smoothness_for(const MinimaxProblem& p, const PointPair& centre, double radius,
                      std::uint64_t seed) {
  Rng rng = Rng::stream(seed, kSmoothnessStream);
  SmoothnessSampling s;
  s.centre = centre;
  s.radius = radius;
  return estimate_smoothness(p, s, rng);
}

bool needs_smoothness(const ExperimentConfig& cfg) { return !cfg.eta || cfg.gap_every.has_value(); }

ExperimentSetup build_euclidean_quadratic(const ExperimentConfig& cfg) {
  Rng data = Rng::stream(cfg.seed, kDataStream);
  Matrix b = gaussian_matrix(cfg.n, cfg.n, data);
  b *= 1.0 / std::sqrt(static_cast<double>(cfg.n));
  Rng start_rng = Rng::stream(cfg.seed, kStartStream);
  std::vector<double> x0 = gaussian_vector(cfg.n, start_rng);
  std::vector<double> y0 = gaussian_vector(cfg.n, start_rng);
  const double diameter = 2.0 * std::max(norm2(x0), norm2(y0)) + 1.0;
  ExperimentSetup s{euclidean_quadratic(b, diameter),
                    PointPair{Point{Shape::kVector, std::move(x0)}, Point{Shape::kVector, std::move(y0)}},
                    {}};
  s.reference = s.problem.known_saddle;
  return s;
}

ExperimentSetup build_spd_bilinear(const ExperimentConfig& cfg) {
  Rng data = Rng::stream(cfg.seed, kDataStream);
  const SymMatrix a = random_spd(cfg.n, cfg.mu, cfg.l, data);
  const SymMatrix b = random_spd(cfg.n, cfg.mu, cfg.l, data);
  const SpdManifold probe(cfg.n);
  const Point x0 = probe.point(a);
  const Point y0 = probe.point(b);
  const Point id = probe.identity();
  const double diameter = 2.0 * std::max({probe.distance(id, x0), probe.distance(id, y0), 1.0});
  auto m = make_spd(cfg.n, diameter);
  ExperimentSetup s{spd_bilinear(m, x0, y0), PointPair{id, id}, {}};
  s.reference = s.problem.known_saddle;
  if (needs_smoothness(cfg)) {
    s.problem.smoothness_l = smoothness_for(s.problem, *s.reference, diameter / 2.0, cfg.seed);
  }
  return s;
}

ExperimentSetup build_robust_pca(const ExperimentConfig& cfg) {
  RobustPcaInstance inst;
  inst.data = generate_dataset(cfg.n, cfg.k, cfg.mu, cfg.l, cfg.seed);
  inst.alpha = cfg.alpha;
  inst.n = cfg.n;
  const SpdManifold probe(cfg.n);
  const Point id = probe.identity();
  double spread = 0.0;
  for (const auto& mi : inst.data) spread = std::max(spread, probe.distance(id, probe.point(mi)));
  const double spd_diameter = 2.0 * spread + 1.0;
  ExperimentSetup s{robust_pca(inst, 1.0, spd_diameter), {}, {}};
  Rng start_rng = Rng::stream(cfg.seed, kStartStream);
  const auto& sphere = static_cast<const Sphere&>(s.problem.min_space());
  s.start = PointPair{sphere.point(gaussian_vector(cfg.n, start_rng)), id};
  if (needs_smoothness(cfg)) {
    s.problem.smoothness_l = smoothness_for(s.problem, s.start, spd_diameter / 2.0, cfg.seed);
  }
  return s;
}

ExperimentSetup build_augmented_lagrangian(const ExperimentConfig& cfg) {
  Rng data = Rng::stream(cfg.seed, kDataStream);
  const SpdManifold probe(cfg.n);
  const Point c = probe.point(random_spd(cfg.n, cfg.mu, cfg.l, data));
  const Point id = probe.identity();
  const double diameter = 2.0 * std::max(probe.distance(id, c), 1.0);
  auto m = make_spd(cfg.n, diameter);
  ExperimentSetup s{augmented_lagrangian(m, half_squared_distance(m, c), {log_det(m)}, cfg.alpha), {}, {}};
  s.start = PointPair{id, Point{Shape::kVector, {0.0}}};
  if (needs_smoothness(cfg)) {
    s.problem.smoothness_l = smoothness_for(s.problem, s.start, diameter / 2.0, cfg.seed);
  }
  return s;
}

void write_number(std::ostream& out, double v) { out << format_number(v); }

void write_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) write_number(out, *v);
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::vector<SymMatrix> generate_dataset(std::size_t n, std::size_t k, double mu, double l,
                                        std::uint64_t seed) {
  if (n == 0 || k == 0) raise(ErrorKind::kParameter, "generate_dataset: n and k must be >= 1");
  Rng rng = Rng::stream(seed, kDataStream);
  std::vector<SymMatrix> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_spd(n, mu, l, rng));
  return out;
}

ExperimentSetup build_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.problem) {
    case ProblemKind::kEuclideanQuadratic: return build_euclidean_quadratic(cfg);
    case ProblemKind::kSpdBilinear: return build_spd_bilinear(cfg);
    case ProblemKind::kRobustPca: return build_robust_pca(cfg);
    case ProblemKind::kAugmentedLagrangian: return build_augmented_lagrangian(cfg);
  }
  raise(ErrorKind::kConfig, "unknown problem");
}

RunOptions run_options(const ExperimentConfig& cfg, const ExperimentSetup& setup) {
  RunOptions o;
  o.algorithm = cfg.algo;
  o.eta = cfg.eta;
  o.iterations = cfg.iters;
  o.start = setup.start;
  o.reference = setup.reference;
  o.record_every = cfg.record_every;
  o.gap_every = cfg.gap_every;
  o.gap_point = cfg.gap_at;
  return o;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.t << ',';
    write_number(out, r.value);
    out << ',';
    write_number(out, r.grad_norm_x);
    out << ',';
    write_number(out, r.grad_norm_y);
    out << ',';
    write_optional(out, r.dist_to_ref);
    out << ',';
    write_optional(out, r.gap_estimate);
    out << ',';
    write_number(out, r.wall_ms);
    out << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const ExperimentSetup setup = build_experiment(cfg);
  ExperimentResult result;
  result.smoothness_l = setup.problem.smoothness_l;
  result.trace = run(setup.problem, run_options(cfg, setup));
  const Trace& trace = result.trace;

  const std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) raise(ErrorKind::kIo, "cannot create output directory " + dir.string() + ": " + ec.message());

  result.trace_path = dir / "trace.csv";
  {
    std::ofstream out(result.trace_path, std::ios::binary);
    if (!out) raise(ErrorKind::kIo, "cannot open " + result.trace_path.string());
    write_trace_csv(out, trace);
    if (!out) raise(ErrorKind::kIo, "write failed for " + result.trace_path.string());
  }

  nlohmann::json meta;
  meta["config"] = {
      {"problem", to_string(cfg.problem)},
      {"n", cfg.n},
      {"k", cfg.k},
      {"alpha", cfg.alpha},
      {"mu", cfg.mu},
      {"l", cfg.l},
      {"algo", to_string(cfg.algo)},
      {"eta", cfg.eta ? nlohmann::json(*cfg.eta) : nlohmann::json("auto")},
      {"iters", cfg.iters},
      {"seed", cfg.seed},
      {"record_every", cfg.record_every},
      {"gap_every", cfg.gap_every ? nlohmann::json(*cfg.gap_every) : nlohmann::json("off")},
      {"gap_at", to_string(cfg.gap_at)},
      {"out", cfg.out},
  };
  meta["problem"] = setup.problem.name;
  meta["tau_m"] = trace.tau_m;
  meta["tau_n"] = trace.tau_n;
  meta["eta"] = trace.eta;
  meta["smoothness_l"] = optional_json(result.smoothness_l);
  meta["status"] = to_string(trace.status);
  meta["diagnostic"] = trace.diagnostic;
  meta["iterations_completed"] = trace.iterations_completed;
  meta["gap_failures"] = trace.gap_failures;
  if (!trace.records.empty()) {
    const auto& last = trace.records.back();
    meta["final"] = {{"iter", last.t},
                     {"value", last.value},
                     {"grad_norm_x", last.grad_norm_x},
                     {"grad_norm_y", last.grad_norm_y},
                     {"dist_to_ref", optional_json(last.dist_to_ref)}};
  }

  result.manifest_path = dir / "meta.json";
  std::ofstream out(result.manifest_path, std::ios::binary);
  if (!out) raise(ErrorKind::kIo, "cannot open " + result.manifest_path.string());
  out << meta.dump(2) << '\n';
  if (!out) raise(ErrorKind::kIo, "write failed for " + result.manifest_path.string());
  return result;
}

std::vector<ExperimentResult> run_replicates(const ExperimentConfig& cfg, std::size_t jobs) {
  if (jobs == 0) raise(ErrorKind::kParameter, "run_replicates: jobs must be >= 1");
  std::vector<ExperimentResult> results(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t i = 0; i < jobs; ++i) {
    workers.emplace_back([&, i] {
      try {
        ExperimentConfig c = cfg;
        c.seed = cfg.seed + i;
        c.out = (std::filesystem::path(cfg.out) / ("seed_" + std::to_string(c.seed))).string();
        results[i] = run_experiment(c);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace geominimax
