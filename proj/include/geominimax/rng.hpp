#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace geominimax {

/// Seeded generator with platform-independent output.
///
/// Raw bits come from std::mt19937_64, whose sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms are
/// implementation-defined), so the real-valued transforms are done here:
/// uniform doubles take the top 53 bits, normals use the Box-Muller
/// transform and hand out both variates of each pair in order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent generator for a named sub-stream of `seed` (splitmix64 mix).
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform();                     // [0, 1)
  double uniform(double lo, double hi); // [lo, hi)
  double normal();                      // standard Gaussian

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace geominimax
