#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geominimax/checks.hpp"
#include "geominimax/config.hpp"
#include "geominimax/error.hpp"
#include "geominimax/experiment.hpp"
#include "test_support.hpp"

namespace geominimax {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("geominimax_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kContract;
}

// Config -----------------------------------------------------------------

TEST(Config, MinimalFillsDefaults) {
  const auto c = parse_config_text("problem = spd_bilinear\nn = 10\n");
  EXPECT_EQ(c.problem, ProblemKind::kSpdBilinear);
  EXPECT_EQ(c.n, 10u);
  EXPECT_EQ(c.record_every, 1u);
  EXPECT_EQ(c.gap_every, std::optional<std::size_t>(50));
  EXPECT_FALSE(c.eta);
  EXPECT_EQ(c.algo, Algorithm::kRceg);
  EXPECT_EQ(c.gap_at, GapPoint::kAverage);
}

TEST(Config, NegativeAlphaNamesField) {
  try {
    parse_config_text("problem = robust_pca\nn = 4\nalpha = -1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
}

TEST(Config, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { parse_config_text("problem = spd_bilinear\nn = 3\niters = 0\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text("problem = spd_bilinear\nn = 3\nbogus = 1\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text("problem = spd_bilinear\nn 3\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text("problem = spd_bilinear\nn = 3\nn = 4\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text("problem = spd_bilinear\nn = 3\neta = fast\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text("problem = spd_bilinear\nn = 3\nalgo = sgd\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text("n = 3\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text("problem = spd_bilinear\nn = 3\nmu = 2\nl = 1\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config(scratch("missing") / "nope.cfg"); }), ErrorKind::kConfig);
  try {
    parse_config_text("problem = spd_bilinear\nn = 3\nrecord_every = -2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("record_every"), std::string::npos);
  }
}

TEST(Config, CommentsAndSpecialValues) {
  const auto c = parse_config_text(
      "# comment\n\nproblem=robust_pca\n  n = 6  \nalpha = 0.5\neta = 0.01\ngap_every = off\nalgo = rgda\n"
      "gap_at = last\nseed = 18446744073709551615\n");
  EXPECT_EQ(c.n, 6u);
  EXPECT_EQ(c.eta, std::optional<double>(0.01));
  EXPECT_FALSE(c.gap_every);
  EXPECT_EQ(c.algo, Algorithm::kRgda);
  EXPECT_EQ(c.gap_at, GapPoint::kLast);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
}

TEST(Config, RoundTrip) {
  const std::vector<std::string> texts = {
      "problem = spd_bilinear\nn = 10\n",
      "problem = robust_pca\nn = 7\nk = 3\nalpha = 0.1\nmu = 0.2\nl = 4.5\neta = 0.1234567890123\n"
      "gap_every = off\nout = runs/a b\n",
      "problem = augmented_lagrangian\nn = 2\nalpha = 0\neta = 1e-300\nseed = 99\nrecord_every = 7\n",
  };
  for (const auto& t : texts) {
    const auto c1 = parse_config_text(t);
    const auto c2 = parse_config_text(serialize(c1));
    EXPECT_EQ(c1, c2);
    EXPECT_EQ(serialize(c1), serialize(c2));
  }
}

TEST(Config, FromFile) {
  const fs::path dir = scratch("cfgfile");
  fs::create_directories(dir);
  std::ofstream(dir / "a.cfg") << "problem = euclidean_quadratic\nn = 3\n";
  EXPECT_EQ(parse_config(dir / "a.cfg").n, 3u);
}

// Dataset ----------------------------------------------------------------

TEST(Dataset, DefaultConfiguration) {
  const auto data = generate_dataset(50, 40, 0.2, 4.5, 1);
  ASSERT_EQ(data.size(), 40u);
  for (const auto& m : data) {
    ASSERT_EQ(m.size(), 50u);
    const auto d = sym_eig(m);
    ASSERT_GE(d.lambda.back(), 0.2 - 1e-10);
    ASSERT_LE(d.lambda.front(), 4.5 + 1e-10);
  }
}

TEST(Dataset, SingleMatrixAndSeeds) {
  EXPECT_EQ(generate_dataset(3, 1, 0.2, 4.5, 0).size(), 1u);
  const auto a = generate_dataset(4, 3, 0.2, 4.5, 5);
  const auto b = generate_dataset(4, 3, 0.2, 4.5, 5);
  const auto c = generate_dataset(4, 3, 0.2, 4.5, 6);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_NE(a[0], a[1]);
}

// Output -----------------------------------------------------------------

TEST(Format, SeventeenDigitsLocaleFree) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-2.5e-300), "-2.5e-300");
  EXPECT_EQ(format_number(123456789.123456789), "123456789.12345679");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Experiment, WritesTraceAndManifest) {
  ExperimentConfig cfg = parse_config_text("problem = euclidean_quadratic\nn = 4\niters = 60\ngap_every = 20\nseed = 3\n");
  cfg.out = scratch("run1").string();
  const auto r = run_experiment(cfg);
  const std::string csv = read_file(r.trace_path);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, std::string(kTraceHeader));
  std::size_t rows = 0, prev = 0;
  while (std::getline(in, line)) {
    ++rows;
    const std::size_t it = std::stoul(line.substr(0, line.find(',')));
    EXPECT_GT(it, prev);
    prev = it;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6);
  }
  EXPECT_EQ(rows, 60u);
  const auto meta = nlohmann::json::parse(read_file(r.manifest_path));
  EXPECT_EQ(meta["status"], "completed");
  EXPECT_EQ(meta["config"]["problem"], "euclidean_quadratic");
  EXPECT_EQ(meta["tau_m"], 1.0);
  EXPECT_GT(meta["eta"].get<double>(), 0.0);
}

TEST(Experiment, EmptyFieldsWhenNotComputed) {
  ExperimentConfig cfg = parse_config_text("problem = robust_pca\nn = 3\nk = 2\niters = 5\ngap_every = off\n");
  cfg.out = scratch("run2").string();
  const auto r = run_experiment(cfg);
  std::istringstream in(read_file(r.trace_path));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_NE(line.find(",,,"), std::string::npos);
}

TEST(Experiment, DeterministicExceptWallClock) {
  ExperimentConfig cfg = parse_config_text("problem = robust_pca\nn = 4\nk = 3\niters = 40\ngap_every = 10\nseed = 8\n");
  cfg.out = scratch("det_a").string();
  const auto a = run_experiment(cfg);
  cfg.out = scratch("det_b").string();
  const auto b = run_experiment(cfg);
  EXPECT_EQ(without_last_column(read_file(a.trace_path)), without_last_column(read_file(b.trace_path)));
}

TEST(Experiment, DivergenceIsAStatus) {
  ExperimentConfig cfg = parse_config_text(
      "problem = spd_bilinear\nn = 3\nmu = 0.5\nl = 1.5\nalgo = rgda\neta = 2\niters = 500\ngap_every = off\n");
  cfg.out = scratch("div").string();
  const auto r = run_experiment(cfg);
  EXPECT_EQ(r.trace.status, RunStatus::kDiverged);
  const auto meta = nlohmann::json::parse(read_file(r.manifest_path));
  EXPECT_EQ(meta["status"], "diverged");
  EXPECT_FALSE(meta["diagnostic"].get<std::string>().empty());
}

TEST(Experiment, UnwritableOutputIsIoError) {
  const fs::path dir = scratch("io");
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  ExperimentConfig cfg = parse_config_text("problem = euclidean_quadratic\nn = 2\niters = 2\n");
  cfg.out = (dir / "file" / "sub").string();
  EXPECT_EQ(kind_of([&] { run_experiment(cfg); }), ErrorKind::kIo);
}

TEST(Experiment, ReplicatesUseSeedSubdirectories) {
  ExperimentConfig cfg = parse_config_text("problem = euclidean_quadratic\nn = 3\niters = 10\nseed = 4\n");
  cfg.out = scratch("reps").string();
  const auto rs = run_replicates(cfg, 3);
  ASSERT_EQ(rs.size(), 3u);
  for (std::uint64_t s = 4; s < 7; ++s) EXPECT_TRUE(fs::exists(fs::path(cfg.out) / ("seed_" + std::to_string(s)) / "trace.csv"));
  ExperimentConfig single = cfg;
  single.seed = 5;
  single.out = scratch("reps_single").string();
  const auto one = run_experiment(single);
  EXPECT_EQ(without_last_column(read_file(one.trace_path)), without_last_column(read_file(rs[1].trace_path)));
}

// Checks -----------------------------------------------------------------

TEST(Checks, UnknownTargetIsConfigError) {
  EXPECT_EQ(kind_of([] { run_check("everything", 10, 0); }), ErrorKind::kConfig);
}

TEST(Checks, SmallSuitesPass) {
  for (const char* target : {"manifolds", "triangles", "gradients"}) {
    const auto r = run_check(target, 30, 1);
    EXPECT_TRUE(r.all_pass()) << target;
    EXPECT_FALSE(r.lines.empty());
  }
}

TEST(Checks, LineFormat) {
  const CheckLine l{"x.y", 3, 0.5, 1.0, true};
  EXPECT_EQ(format_line(l), "x.y trials=3 worst=0.5 tol=1 PASS");
}

}  // namespace
}  // namespace geominimax
