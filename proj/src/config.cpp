#include "geominimax/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "geominimax/error.hpp"

namespace geominimax {

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::kEuclideanQuadratic: return "euclidean_quadratic";
    case ProblemKind::kSpdBilinear: return "spd_bilinear";
    case ProblemKind::kRobustPca: return "robust_pca";
    case ProblemKind::kAugmentedLagrangian: return "augmented_lagrangian";
  }
  return "unknown";
}

namespace {

[[noreturn]] void config_error(std::string_view origin, std::string_view field, const std::string& what) {
  std::ostringstream msg;
  msg << origin << ": " << field << ": " << what;
  raise(ErrorKind::kConfig, msg.str());
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view origin, std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    config_error(origin, key, "expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t parse_u64(std::string_view origin, std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    config_error(origin, key, "expected a nonnegative integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

const std::set<std::string_view> kKnownKeys = {"problem", "n",    "k",     "alpha",        "mu",
                                               "l",       "algo", "eta",   "iters",        "seed",
                                               "record_every",    "gap_every", "gap_at", "out"};

}  // namespace

void ExperimentConfig::validate() const {
  constexpr std::string_view origin = "config";
  if (n == 0) config_error(origin, "n", "must be >= 1");
  if (problem == ProblemKind::kRobustPca && n < 2) config_error(origin, "n", "robust_pca needs n >= 2");
  if (k == 0) config_error(origin, "k", "must be >= 1");
  if (problem == ProblemKind::kRobustPca ? !(alpha > 0.0) : !(alpha >= 0.0)) {
    config_error(origin, "alpha", "must be " + std::string(problem == ProblemKind::kRobustPca ? "> 0" : ">= 0") +
                                      " (got " + format_double(alpha) + ")");
  }
  if (!(mu > 0.0)) config_error(origin, "mu", "must be > 0 (got " + format_double(mu) + ")");
  if (!(l >= mu)) config_error(origin, "l", "must be >= mu (got " + format_double(l) + ")");
  if (eta && !(*eta > 0.0)) config_error(origin, "eta", "must be > 0 or auto");
  if (iters == 0) config_error(origin, "iters", "must be >= 1");
  if (record_every == 0) config_error(origin, "record_every", "must be >= 1");
  if (gap_every && *gap_every == 0) config_error(origin, "gap_every", "must be >= 1 or off");
  if (out.empty()) config_error(origin, "out", "must not be empty");
}

ExperimentConfig parse_config_text(std::string_view text, std::string_view origin) {
  std::map<std::string, std::string, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      raise(ErrorKind::kConfig, where + ": expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kKnownKeys.contains(key)) config_error(where, key, "unknown key");
    if (value.empty()) config_error(where, key, "missing value");
    if (!entries.emplace(key, value).second) config_error(where, key, "duplicate key");
  }

  ExperimentConfig cfg;
  auto get = [&](std::string_view key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("problem")) {
    if (*v == "euclidean_quadratic") cfg.problem = ProblemKind::kEuclideanQuadratic;
    else if (*v == "spd_bilinear") cfg.problem = ProblemKind::kSpdBilinear;
    else if (*v == "robust_pca") cfg.problem = ProblemKind::kRobustPca;
    else if (*v == "augmented_lagrangian") cfg.problem = ProblemKind::kAugmentedLagrangian;
    else config_error(origin, "problem", "unknown problem '" + *v + "'");
  } else {
    config_error(origin, "problem", "required");
  }
  if (const auto* v = get("n")) cfg.n = parse_u64(origin, "n", *v);
  else config_error(origin, "n", "required");
  if (const auto* v = get("k")) cfg.k = parse_u64(origin, "k", *v);
  if (const auto* v = get("alpha")) cfg.alpha = parse_double(origin, "alpha", *v);
  if (const auto* v = get("mu")) cfg.mu = parse_double(origin, "mu", *v);
  if (const auto* v = get("l")) cfg.l = parse_double(origin, "l", *v);
  if (const auto* v = get("algo")) {
    if (*v == "rceg") cfg.algo = Algorithm::kRceg;
    else if (*v == "rgda") cfg.algo = Algorithm::kRgda;
    else config_error(origin, "algo", "expected rceg or rgda, got '" + *v + "'");
  }
  if (const auto* v = get("eta")) {
    if (*v == "auto") cfg.eta.reset();
    else cfg.eta = parse_double(origin, "eta", *v);
  }
  if (const auto* v = get("iters")) cfg.iters = parse_u64(origin, "iters", *v);
  if (const auto* v = get("seed")) cfg.seed = parse_u64(origin, "seed", *v);
  if (const auto* v = get("record_every")) cfg.record_every = parse_u64(origin, "record_every", *v);
  if (const auto* v = get("gap_every")) {
    if (*v == "off") cfg.gap_every.reset();
    else cfg.gap_every = parse_u64(origin, "gap_every", *v);
  }
  if (const auto* v = get("gap_at")) {
    if (*v == "average") cfg.gap_at = GapPoint::kAverage;
    else if (*v == "last") cfg.gap_at = GapPoint::kLast;
    else config_error(origin, "gap_at", "expected average or last, got '" + *v + "'");
  }
  if (const auto* v = get("out")) cfg.out = *v;

  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::kConfig, path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path.string());
}

std::string serialize(const ExperimentConfig& cfg) {
  std::ostringstream o;
  o << "problem = " << to_string(cfg.problem) << '\n'
    << "n = " << cfg.n << '\n'
    << "k = " << cfg.k << '\n'
    << "alpha = " << format_double(cfg.alpha) << '\n'
    << "mu = " << format_double(cfg.mu) << '\n'
    << "l = " << format_double(cfg.l) << '\n'
    << "algo = " << to_string(cfg.algo) << '\n'
    << "eta = " << (cfg.eta ? format_double(*cfg.eta) : "auto") << '\n'
    << "iters = " << cfg.iters << '\n'
    << "seed = " << cfg.seed << '\n'
    << "record_every = " << cfg.record_every << '\n'
    << "gap_every = " << (cfg.gap_every ? std::to_string(*cfg.gap_every) : "off") << '\n'
    << "gap_at = " << to_string(cfg.gap_at) << '\n'
    << "out = " << cfg.out << '\n';
  return o.str();
}

}  // namespace geominimax
