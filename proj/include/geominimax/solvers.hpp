#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "geominimax/problem.hpp"

namespace geominimax {

/// Iterate bookkeeping for the extragradient family.
///   current       (x_t, y_t)
///   extrapolated  (w_t, z_t), the pair produced by the most recent step
///   average       geodesic running average of the extrapolated pairs
struct SolverState {
  std::size_t t = 0;
  PointPair current;
  PointPair extrapolated;
  PointPair average;
  double eta = 0.0;
  /// Partial gradients at `current`, cached by whoever evaluates them first.
  std::optional<Tangent> grad_x_current;
  std::optional<Tangent> grad_y_current;
};

SolverState initial_state(const PointPair& start, double eta);

/// Fills the gradient cache of `s` if needed and returns the pair.
std::pair<Tangent, Tangent> current_gradients(const MinimaxProblem& p, SolverState& s);

/// One Riemannian corrected extragradient step:
///   w  = Exp_x(-eta grad_x f(x, y)),          z  = Exp_y(eta grad_y f(x, y))
///   x+ = Exp_w(-eta grad_x f(w, z) + Log_w x), y+ = Exp_z(eta grad_y f(w, z) + Log_z y)
/// The Log_w x term makes Log_w(x+) = Log_w(x) - eta grad_x f(w, z) hold exactly.
/// The running average is left to the caller (see geodesic_average_update).
SolverState rceg_step(const MinimaxProblem& p, SolverState s);

/// Simultaneous descent-ascent: x+ = Exp_x(-eta grad_x), y+ = Exp_y(eta grad_y).
/// The new pair is also stored as the extrapolated pair.
SolverState rgda_step(const MinimaxProblem& p, SolverState s);

/// Moves a running average that already holds `count` pairs a fraction
/// 1 / (count + 1) along the geodesic towards `next`. count = 0 returns `next`.
PointPair geodesic_average_update(const ProductManifold& m, const PointPair& average,
                                  const PointPair& next, std::size_t count);

struct GdOptions {
  double eta = 0.1;
  std::size_t max_iters = 1000;
  double tol = 1e-8;
  /// Throws ErrorKind::kDiverged once the iterate is farther than this from x0.
  double escape_radius = std::numeric_limits<double>::infinity();
};

struct GdResult {
  Point point;
  std::size_t iterations = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
};

/// Riemannian gradient descent x+ = Exp_x(-eta grad(x)) until |grad| <= tol or
/// the iteration cap. Throws ErrorKind::kDiverged after 10 consecutive value
/// increases, on a non-finite value, or past options.escape_radius.
GdResult riemannian_gd(const Manifold& m, const ScalarFn& phi, const GradientFn& grad,
                       const Point& x0, const GdOptions& options);

struct GapEstimate {
  /// max_y f(x^, y) - min_x f(x, y^) from warm-started inner solves, floored
  /// at 0; empty when an inner solve diverged or hit its cap.
  std::optional<double> gap;
  /// f(x^, y*) - f(x*, y^) when the problem declares its saddle.
  std::optional<double> certified_lower;
  std::string diagnostic;
  std::size_t inner_iterations = 0;
};

GapEstimate estimate_duality_gap(const MinimaxProblem& p, const PointPair& at, const GdOptions& inner);

/// f(x^, y*) - f(x*, y^); requires p.known_saddle.
double certified_gap(const MinimaxProblem& p, const PointPair& at);

enum class Algorithm { kRceg, kRgda };
enum class GapPoint { kAverage, kLast };
enum class RunStatus { kCompleted, kDiverged };

std::string to_string(Algorithm a);
std::string to_string(GapPoint g);
std::string to_string(RunStatus s);

struct IterationRecord {
  std::size_t t = 0;
  double value = 0.0;        // f at the current pair
  double grad_norm_x = 0.0;  // at the current pair
  double grad_norm_y = 0.0;
  std::optional<double> dist_to_ref;    // current pair to the reference pair
  std::optional<double> gap_estimate;   // at the pair selected by GapPoint
  std::optional<double> certified_gap;  // at the averaged pair
  double wall_ms = 0.0;
};

struct RunOptions {
  Algorithm algorithm = Algorithm::kRceg;
  /// Fixed step; empty selects rceg_step_size(L, tau_M, tau_N).
  std::optional<double> eta;
  std::size_t iterations = 1000;
  PointPair start;
  /// Pair for dist_to_ref; defaults to the problem's known saddle.
  std::optional<PointPair> reference;
  std::size_t record_every = 1;
  /// Gap-estimation cadence; empty disables it.
  std::optional<std::size_t> gap_every = 50;
  GapPoint gap_point = GapPoint::kAverage;
  /// Inner solver settings; default eta = 1/(2L), tol 1e-8, cap 10 * iterations,
  /// escape radius divergence_factor * max(1, d(start, reference)).
  std::optional<GdOptions> inner;
  /// Run halts as diverged once d(current, start) exceeds this factor times
  /// max(1, d(start, reference)).
  double divergence_factor = 1e3;
  std::function<void(const IterationRecord&)> on_record;
};

struct Trace {
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::kCompleted;
  std::string diagnostic;
  std::size_t iterations_completed = 0;
  double eta = 0.0;
  double tau_m = 1.0;
  double tau_n = 1.0;
  PointPair final_current;
  PointPair final_average;
  std::size_t gap_failures = 0;
};

/// Runs RCEG or RGDA from options.start, maintaining the geodesic average of
/// the extrapolated pairs and recording diagnostics at the configured cadence.
/// Divergence ends the run early with status kDiverged rather than throwing.
Trace run(const MinimaxProblem& p, const RunOptions& options);

}  // namespace geominimax
