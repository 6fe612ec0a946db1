// Acceptance run: one PASS/FAIL line per criterion, exit status 0 when every
// criterion not listed as known-unattainable passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "geominimax/checks.hpp"
#include "geominimax/config.hpp"
#include "geominimax/error.hpp"
#include "geominimax/experiment.hpp"
#include "geominimax/matrix_kernel.hpp"
#include "geominimax/problems.hpp"
#include "geominimax/rng.hpp"
#include "geominimax/solvers.hpp"

namespace fs = std::filesystem;
using namespace geominimax;

namespace {

// Pinned tolerances and budgets.
constexpr std::size_t kInvariantTrials = 1000;
constexpr double kManifoldSeconds = 30.0;
constexpr double kTriangleSeconds = 60.0;
constexpr std::size_t kEquivalenceIterations = 200;
constexpr double kEquivalenceTolerance = 1e-10;
constexpr std::size_t kRateHorizon = 500;
constexpr double kRateSeconds = 300.0;
constexpr double kBilinearDistanceTolerance = 1e-3;
constexpr std::size_t kBilinearWindow = 1000;
constexpr double kBilinearSeconds = 600.0;
constexpr std::size_t kRobustPcaBurnIn = 100;
constexpr double kRobustPcaMonotoneSlack = 1e-9;
constexpr double kRobustPcaGradTolerance = 1e-4;
constexpr double kRobustPcaSeconds = 900.0;
constexpr std::size_t kGradientTrials = 50;
constexpr std::size_t kDeterminismIterations = 300;
constexpr std::uint64_t kCheckSeed = 0;

// Criteria that cannot be met on this problem family; see the README.
const std::set<int> kKnownUnattainable = {6};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

fs::path config_dir() { return fs::path(GEOMINIMAX_SOURCE_DIR) / "configs"; }

ExperimentConfig load(const std::string& name, const fs::path& out) {
  ExperimentConfig cfg = parse_config(config_dir() / name);
  cfg.out = out.string();
  return cfg;
}

Outcome report_outcome(const CheckReport& r, double secs, double budget) {
  std::ostringstream os;
  double worst_ratio = 0.0;
  for (const CheckLine& l : r.lines) {
    if (l.tolerance > 0.0) worst_ratio = std::max(worst_ratio, l.worst / l.tolerance);
    if (!l.pass) os << l.name << " failed; ";
  }
  const bool in_time = secs < budget;
  os << "lines=" << r.lines.size() << " worst/tol=" << num(worst_ratio) << " time=" << num(secs)
     << "s budget=" << num(budget) << "s";
  return {r.all_pass() && in_time, os.str()};
}

Outcome criterion_manifolds() {
  const auto start = Clock::now();
  const CheckReport r = check_manifolds(kInvariantTrials, kCheckSeed);
  return report_outcome(r, seconds_since(start), kManifoldSeconds);
}

Outcome criterion_triangles() {
  const auto start = Clock::now();
  const CheckReport r = check_triangles(kInvariantTrials, kCheckSeed);
  // A line passes only with zero violations; worst is the largest excess over the comparison bound.
  double worst = -INFINITY;
  std::size_t failed = 0;
  for (const CheckLine& l : r.lines) {
    worst = std::max(worst, l.worst);
    if (!l.pass) ++failed;
  }
  const double secs = seconds_since(start);
  return {r.all_pass() && secs < kTriangleSeconds,
          "failed_lines=" + std::to_string(failed) + " worst_excess=" + num(worst) + " time=" + num(secs) + "s budget=" + num(kTriangleSeconds) + "s"};
}

// Plain vector extragradient on x^T b y, written without the manifold layer.
Outcome criterion_equivalence() {
  Rng rng = Rng::stream(kCheckSeed, 7);
  const std::size_t n = 8;
  const Matrix b = gaussian_matrix(n, n, rng);
  const MinimaxProblem p = euclidean_quadratic(b);
  std::vector<double> x(n), y(n);
  for (double& v : x) v = rng.normal();
  for (double& v : y) v = rng.normal();
  const double eta = 0.5 / *p.smoothness_l;
  const Matrix bt = b.transpose();

  SolverState s = initial_state(PointPair{Point{Shape::kVector, x}, Point{Shape::kVector, y}}, eta);
  double worst = 0.0;
  for (std::size_t t = 0; t < kEquivalenceIterations; ++t) {
    s = rceg_step(p, std::move(s));
    const auto gx = b * std::span<const double>(y);
    const auto gy = bt * std::span<const double>(x);
    std::vector<double> w(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = x[i] - eta * gx[i];
      z[i] = y[i] + eta * gy[i];
    }
    const auto gxw = b * std::span<const double>(z);
    const auto gyz = bt * std::span<const double>(w);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] -= eta * gxw[i];
      y[i] += eta * gyz[i];
      worst = std::max({worst, std::abs(s.current.x.coords[i] - x[i]), std::abs(s.current.y.coords[i] - y[i])});
    }
  }
  return {worst <= kEquivalenceTolerance,
          "iterations=" + std::to_string(kEquivalenceIterations) + " worst=" + num(worst) + " tol=" +
              num(kEquivalenceTolerance)};
}

Outcome criterion_rate() {
  const auto start = Clock::now();
  const CheckReport r = check_rate(kRateHorizon, kCheckSeed);
  return report_outcome(r, seconds_since(start), kRateSeconds);
}

Outcome criterion_bilinear(const fs::path& out) {
  const auto start = Clock::now();
  const ExperimentResult rceg = run_experiment(load("bilinear_rceg.cfg", out / "bilinear_rceg"));
  const ExperimentResult rgda = run_experiment(load("bilinear_rgda.cfg", out / "bilinear_rgda"));
  const double secs = seconds_since(start);

  const auto& rr = rceg.trace.records;
  const double final_dist = rr.empty() || !rr.back().dist_to_ref ? INFINITY : *rr.back().dist_to_ref;
  const bool rceg_ok = rceg.trace.status == RunStatus::kCompleted && final_dist < kBilinearDistanceTolerance;

  bool rgda_ok = rgda.trace.status == RunStatus::kDiverged;
  std::string rgda_detail = "rgda=" + to_string(rgda.trace.status) + " at t=" +
                            std::to_string(rgda.trace.iterations_completed);
  if (!rgda_ok) {
    const std::size_t from = rgda.trace.iterations_completed - std::min(kBilinearWindow, rgda.trace.iterations_completed);
    bool nondecreasing = true;
    std::optional<double> prev;
    for (const IterationRecord& rec : rgda.trace.records) {
      if (rec.t < from || !rec.dist_to_ref) continue;
      if (prev && *rec.dist_to_ref < *prev) nondecreasing = false;
      prev = rec.dist_to_ref;
    }
    rgda_ok = nondecreasing && prev.has_value();
    rgda_detail += nondecreasing ? " distance non-decreasing" : " distance decreased";
  }
  return {rceg_ok && rgda_ok && secs < kBilinearSeconds,
          "rceg_final_dist=" + num(final_dist) + " tol=" + num(kBilinearDistanceTolerance) + " " + rgda_detail +
              " time=" + num(secs) + "s budget=" + num(kBilinearSeconds) + "s"};
}

// Least-squares slope of log(gap) against t; NaN when a gap is not positive.
double log_gap_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return NAN;
  double st = 0, sl = 0, stt = 0, stl = 0;
  for (const auto& [t, g] : pts) {
    if (!(g > 0.0)) return NAN;
    const double l = std::log(g);
    st += t;
    sl += l;
    stt += t * t;
    stl += t * l;
  }
  const double m = static_cast<double>(pts.size());
  return (m * stl - st * sl) / (m * stt - st * st);
}

Outcome criterion_robust_pca(const fs::path& out) {
  const auto start = Clock::now();
  bool pass = true;
  std::ostringstream os;
  for (const char* name : {"robust_pca_alpha0.5.cfg", "robust_pca_alpha2.cfg"}) {
    const ExperimentConfig cfg = load(name, out / fs::path(name).stem());
    const ExperimentResult res = run_experiment(cfg);
    const Trace& tr = res.trace;

    std::vector<std::pair<double, double>> gaps;
    for (const IterationRecord& rec : tr.records)
      if (rec.gap_estimate && rec.t > kRobustPcaBurnIn) gaps.emplace_back(static_cast<double>(rec.t), *rec.gap_estimate);
    double worst_rise = 0.0;
    for (std::size_t i = 1; i < gaps.size(); ++i) worst_rise = std::max(worst_rise, gaps[i].second - gaps[i - 1].second);
    const bool monotone = !gaps.empty() && worst_rise <= kRobustPcaMonotoneSlack;

    const IterationRecord& last = tr.records.back();
    const double grad = std::max(last.grad_norm_x, last.grad_norm_y);
    const bool grads_ok = grad <= kRobustPcaGradTolerance;

    const double third = static_cast<double>(cfg.iters) * 2.0 / 3.0;
    std::vector<std::pair<double, double>> tail;
    for (const auto& pt : gaps)
      if (pt.first >= third) tail.push_back(pt);
    const double slope = log_gap_slope(tail);
    const bool slope_ok = slope < 0.0;

    const bool ok = tr.status == RunStatus::kCompleted && monotone && grads_ok && slope_ok;
    pass = pass && ok;
    os << "alpha=" << num(cfg.alpha) << "[" << (ok ? "ok" : "bad") << " max_rise=" << num(worst_rise)
       << " final_gap=" << (gaps.empty() ? std::string("none") : num(gaps.back().second))
       << " final_grad=" << num(grad) << " log_gap_slope=" << num(slope) << "] ";
  }
  const double secs = seconds_since(start);
  os << "time=" << num(secs) << "s budget=" << num(kRobustPcaSeconds) << "s";
  return {pass && secs < kRobustPcaSeconds, os.str()};
}

Outcome criterion_gradients() {
  const CheckReport r = check_gradients(kGradientTrials, kCheckSeed);
  double worst = 0.0;
  for (const CheckLine& l : r.lines) worst = std::max(worst, l.worst);
  return {r.all_pass(), "problems=" + std::to_string(r.lines.size()) + " worst_rel=" + num(worst) + " tol=" +
                            num(kGradientCheckTolerance)};
}

std::string trace_without_wall_ms(const fs::path& path) {
  std::ifstream in(path);
  std::string line, result;
  while (std::getline(in, line)) result += line.substr(0, line.rfind(',')) + '\n';
  return result;
}

Outcome criterion_determinism(const fs::path& out) {
  ExperimentConfig cfg = load("robust_pca_alpha2.cfg", out / "determinism_a");
  cfg.iters = kDeterminismIterations;
  const ExperimentResult a = run_experiment(cfg);
  cfg.out = (out / "determinism_b").string();
  const ExperimentResult b = run_experiment(cfg);
  const std::string ta = trace_without_wall_ms(a.trace_path);
  const std::string tb = trace_without_wall_ms(b.trace_path);
  return {!ta.empty() && ta == tb, "bytes=" + std::to_string(ta.size()) + (ta == tb ? " identical" : " differ")};
}

}  // namespace

int main() {
  const fs::path out = fs::current_path() / "acceptance_out";
  std::error_code ec;
  fs::remove_all(out, ec);
  fs::create_directories(out);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"manifold_invariants", criterion_manifolds},
      {"comparison_inequalities", criterion_triangles},
      {"euclidean_equivalence", criterion_equivalence},
      {"rate_bound", criterion_rate},
      {"bilinear_reproduction", [&] { return criterion_bilinear(out); }},
      {"robust_pca_reproduction", [&] { return criterion_robust_pca(out); }},
      {"gradient_checks", criterion_gradients},
      {"determinism", [&] { return criterion_determinism(out); }},
  };

  bool ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const bool known = kKnownUnattainable.count(id) > 0;
    if (!o.pass && !known) ok = false;
    std::printf("criterion %d %s %s%s %s\n", id, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                !o.pass && known ? " (known unattainable)" : "", o.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
