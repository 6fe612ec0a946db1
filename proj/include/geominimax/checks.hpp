#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace geominimax {

/// One invariant of a check suite. `worst` is the largest observed value of
/// the checked quantity and passes when it is <= `tolerance`.
struct CheckLine {
  std::string name;
  std::size_t trials = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckLine> lines;

  bool all_pass() const;
};

/// `name trials=<n> worst=<v> tol=<v> PASS|FAIL`
std::string format_line(const CheckLine& line);

inline constexpr double kManifoldCheckTolerance = 1e-8;
inline constexpr double kGradientCheckTolerance = 1e-5;

/// Exp/Log round trip, transport isometry and Log_w x = -Gamma u for
/// w = Exp_x u, on Euclidean(5), Sphere(4), SPD(3) and SPD(3) x Sphere(4).
CheckReport check_manifolds(std::size_t trials, std::uint64_t seed);

/// Both comparison inequalities on Euclidean(5), Sphere(4) with D = pi/4 and
/// SPD(3); `worst` is the number of violations.
CheckReport check_triangles(std::size_t trials, std::uint64_t seed);

/// Analytic Riemannian gradients against the central-difference oracle,
/// relative error, `trials` random points per problem.
CheckReport check_gradients(std::size_t trials, std::uint64_t seed);

/// Certified gap at the averaged iterate against (d0_x^2 + d0_y^2) / (eta T)
/// for T = 1 .. `trials` on euclidean_quadratic (n = 20) and spd_bilinear
/// (n = 5) with the automatic step size. `worst` is the largest ratio of gap
/// to bound.
CheckReport check_rate(std::size_t trials, std::uint64_t seed);

/// Dispatches on manifolds | triangles | gradients | rate. Unknown targets
/// throw ErrorKind::kConfig.
CheckReport run_check(std::string_view target, std::size_t trials, std::uint64_t seed);

}  // namespace geominimax
