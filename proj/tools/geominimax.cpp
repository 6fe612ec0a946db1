#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "geominimax/checks.hpp"
#include "geominimax/config.hpp"
#include "geominimax/error.hpp"
#include "geominimax/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

int exit_code_for(geominimax::ErrorKind kind) {
  using geominimax::ErrorKind;
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kParameter:
      return kExitUsage;
    case ErrorKind::kIo:
      return kExitIo;
    default:
      return kExitNumerical;
  }
}

void print_summary(const geominimax::ExperimentResult& r) {
  const auto& t = r.trace;
  std::cout << r.trace_path.string() << ": status=" << geominimax::to_string(t.status)
            << " iterations=" << t.iterations_completed << " eta=" << geominimax::format_number(t.eta);
  if (!t.records.empty()) {
    const auto& last = t.records.back();
    std::cout << " grad_norm_x=" << geominimax::format_number(last.grad_norm_x)
              << " grad_norm_y=" << geominimax::format_number(last.grad_norm_y);
    if (last.dist_to_ref) std::cout << " dist_to_ref=" << geominimax::format_number(*last.dist_to_ref);
  }
  std::cout << '\n';
  if (!t.diagnostic.empty()) std::cout << "  " << t.diagnostic << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian minimax solvers and benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> run_seed;
  std::size_t jobs = 1;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment from a key = value config file");
  run_cmd->add_option("--config", config_path, "Config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (overrides the config)");
  run_cmd->add_option("--seed", run_seed, "Seed (overrides the config)");
  run_cmd->add_option("--jobs", jobs, "Seed replicates to run concurrently")->check(CLI::PositiveNumber);

  std::string target;
  std::size_t trials = 1000;
  std::uint64_t check_seed = 0;
  auto* check_cmd = app.add_subcommand("check", "Run an invariant suite");
  check_cmd->add_option("target", target, "manifolds | triangles | gradients | rate")->required();
  check_cmd->add_option("--trials", trials, "Randomized trials per invariant");
  check_cmd->add_option("--seed", check_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) {
      geominimax::ExperimentConfig cfg = geominimax::parse_config(config_path);
      if (out_dir) cfg.out = *out_dir;
      if (run_seed) cfg.seed = *run_seed;
      cfg.validate();
      if (jobs == 1) {
        print_summary(geominimax::run_experiment(cfg));
      } else {
        for (const auto& r : geominimax::run_replicates(cfg, jobs)) print_summary(r);
      }
      return kExitOk;
    }
    if (!check_cmd->get_option("--trials")->count() && target == "rate") trials = 500;
    if (!check_cmd->get_option("--trials")->count() && target == "gradients") trials = 50;
    const geominimax::CheckReport report = geominimax::run_check(target, trials, check_seed);
    for (const auto& line : report.lines) std::cout << geominimax::format_line(line) << '\n';
    return report.all_pass() ? kExitOk : kExitNumerical;
  } catch (const geominimax::Error& e) {
    std::cerr << "geominimax: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "geominimax: " << e.what() << '\n';
    return kExitNumerical;
  }
}
