#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "geominimax/config.hpp"
#include "geominimax/matrix_kernel.hpp"
#include "geominimax/problem.hpp"
#include "geominimax/solvers.hpp"

namespace geominimax {

inline constexpr std::string_view kTraceHeader =
    "iter,value,grad_norm_x,grad_norm_y,dist_to_ref,gap_estimate,wall_ms";

/// k matrices Q diag(sigma) Q^T, each with a fresh Q and sigma ~ U[mu, l]^n.
std::vector<SymMatrix> generate_dataset(std::size_t n, std::size_t k, double mu, double l,
                                        std::uint64_t seed);

/// Problem instance, start and optional reference pair built from a config.
/// Everything random is drawn from substreams of cfg.seed.
struct ExperimentSetup {
  MinimaxProblem problem;
  PointPair start;
  std::optional<PointPair> reference;
};

ExperimentSetup build_experiment(const ExperimentConfig& cfg);

RunOptions run_options(const ExperimentConfig& cfg, const ExperimentSetup& setup);

/// Locale-independent, 17 significant digits.
std::string format_number(double v);

void write_trace_csv(std::ostream& out, const Trace& trace);

struct ExperimentResult {
  Trace trace;
  std::optional<double> smoothness_l;
  std::filesystem::path trace_path;
  std::filesystem::path manifest_path;
};

/// Runs one experiment and writes trace.csv and meta.json under cfg.out.
/// Divergence is a normal outcome (trace.status); I/O failures throw
/// ErrorKind::kIo.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Runs `jobs` replicates with seeds cfg.seed .. cfg.seed + jobs - 1, each
/// writing into cfg.out / "seed_<s>". Replicates run concurrently.
std::vector<ExperimentResult> run_replicates(const ExperimentConfig& cfg, std::size_t jobs);

}  // namespace geominimax
