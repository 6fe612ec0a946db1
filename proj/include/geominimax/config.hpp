#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "geominimax/solvers.hpp"

namespace geominimax {

enum class ProblemKind { kEuclideanQuadratic, kSpdBilinear, kRobustPca, kAugmentedLagrangian };

std::string to_string(ProblemKind k);

/// One experiment, read from a flat `key = value` file. Lines starting with
/// '#' and blank lines are ignored; unknown keys are rejected.
///
///   problem       euclidean_quadratic | spd_bilinear | robust_pca | augmented_lagrangian  (required)
///   n             dimension (required)
///   k             dataset size for robust_pca                     (default 8)
///   alpha         penalty weight                                  (default 1)
///   mu, l         eigenvalue range of generated SPD matrices      (default 0.2, 4.5)
///   algo          rceg | rgda                                     (default rceg)
///   eta           step size or "auto"                             (default auto)
///   iters         iteration budget, >= 1                          (default 1000)
///   seed          unsigned 64-bit seed                            (default 0)
///   record_every  trace cadence                                   (default 1)
///   gap_every     gap-estimation cadence or "off"                 (default 50)
///   gap_at        average | last, pair the gap is evaluated at    (default average)
///   out           output directory                                (default out)
struct ExperimentConfig {
  ProblemKind problem = ProblemKind::kEuclideanQuadratic;
  std::size_t n = 0;
  std::size_t k = 8;
  double alpha = 1.0;
  double mu = 0.2;
  double l = 4.5;
  Algorithm algo = Algorithm::kRceg;
  std::optional<double> eta;
  std::size_t iters = 1000;
  std::uint64_t seed = 0;
  std::size_t record_every = 1;
  std::optional<std::size_t> gap_every = 50;
  GapPoint gap_at = GapPoint::kAverage;
  std::string out = "out";

  /// Throws ErrorKind::kConfig naming the offending field.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(std::string_view text, std::string_view origin = "<config>");
std::string serialize(const ExperimentConfig& cfg);

}  // namespace geominimax
