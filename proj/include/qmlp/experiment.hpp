#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qmlp/errors.hpp"
#include "qmlp/timeseries.hpp"
#include "qmlp/training.hpp"

namespace qmlp {

enum class Scenario { noiseless, gaussian, impulsive };
enum class RuleSelection { mse, mcc, both };

inline constexpr std::size_t kWindow = 5;
inline constexpr double kDbFloor = -300.0;

inline std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::noiseless: return "noiseless";
    case Scenario::gaussian: return "gaussian";
    case Scenario::impulsive: return "impulsive";
  }
  return "?";
}

inline Scenario parse_scenario(const std::string& s) {
  if (s == "noiseless") return Scenario::noiseless;
  if (s == "gaussian") return Scenario::gaussian;
  if (s == "impulsive") return Scenario::impulsive;
  throw ConfigError("unknown scenario '" + s + "' (expected noiseless|gaussian|impulsive)");
}

inline RuleSelection parse_rule(const std::string& s) {
  if (s == "mse") return RuleSelection::mse;
  if (s == "mcc") return RuleSelection::mcc;
  if (s == "both") return RuleSelection::both;
  throw ConfigError("unknown rule '" + s + "' (expected mse|mcc|both)");
}

inline std::vector<Rule> rules_of(RuleSelection sel) {
  switch (sel) {
    case RuleSelection::mse: return {Rule::mse};
    case RuleSelection::mcc: return {Rule::mcc};
    case RuleSelection::both: return {Rule::mse, Rule::mcc};
  }
  return {};
}

struct ExperimentSpec {
  Scenario scenario = Scenario::noiseless;
  RuleSelection rule = RuleSelection::both;
  std::size_t hidden_n = 10;
  TrainConfig train;
  MackeyGlassConfig mg;
  GaussianNoise gaussian;
  ImpulsiveNoise impulsive;
  std::size_t trials = 1;
  std::size_t smoothing_window = 50;
  double init_scale = 0.5;
  bool normalize = true;  // affine map of the series onto [norm_lo, norm_hi]
  double norm_lo = -0.9;
  double norm_hi = 0.9;
  std::filesystem::path out_dir = "runs";  // empty: no files written

  NoiseModel noise_for_trial(std::size_t trial) const {
    NoiseModel model;
    switch (scenario) {
      case Scenario::noiseless: model.kind = NoNoise{}; break;
      case Scenario::gaussian: model.kind = gaussian; break;
      case Scenario::impulsive: model.kind = impulsive; break;
    }
    model.seed = derive_seed(trial, 1);
    return model;
  }

  std::uint64_t derive_seed(std::size_t trial, std::uint64_t purpose) const {
    std::seed_seq seq{train.seed, std::uint64_t(trial), purpose};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (std::uint64_t(words[0]) << 32) | words[1];
  }

  void validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (hidden_n < 1) throw ConfigError("hidden_n must be >= 1");
    if (smoothing_window < 1) throw ConfigError("smoothing_window must be >= 1");
    if (train.iterations < 1) throw ConfigError("iterations must be >= 1");
    try {
      train.validate();
      mg.validate();
      noise_for_trial(0).validate();
    } catch (const ParameterError& e) {
      throw ConfigError(e.what());
    }
  }
};

struct RunSummary {
  Rule rule = Rule::mse;
  std::size_t trial = 0;
  double final_mse = 0;     // mean e·e* over the last 10% of iterations
  double final_mse_db = 0;
  std::filesystem::path curve_path;
  std::vector<StepReport> curve;
};

inline double to_db(double value) {
  if (!(value > 0)) return kDbFloor;
  return std::max(10.0 * std::log10(value), kDbFloor);
}

/// Trailing moving average of e·e* over at most `window` samples.
inline std::vector<double> smoothed_mse(std::span<const StepReport> reports, std::size_t window) {
  if (window == 0) throw ParameterError("smoothed_mse: window must be >= 1");
  std::vector<double> out(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const std::size_t first = i + 1 > window ? i + 1 - window : 0;
    double sum = 0;
    for (std::size_t k = first; k <= i; ++k) sum += reports[k].cost_mse;
    out[i] = sum / double(i + 1 - first);
  }
  return out;
}

inline double final_mse(std::span<const StepReport> reports) {
  if (reports.empty()) return 0;
  const std::size_t tail = std::max<std::size_t>(1, (reports.size() + 9) / 10);
  double sum = 0;
  for (std::size_t i = reports.size() - tail; i < reports.size(); ++i) sum += reports[i].cost_mse;
  return sum / double(tail);
}

inline void write_curve_csv(std::span<const StepReport> reports, const std::filesystem::path& path,
                            std::size_t smoothing_window) {
  const auto smooth = smoothed_mse(reports, smoothing_window);
  std::ofstream os(path);
  if (!os) throw IoError(path.string(), "cannot open for writing");
  os << "iter,e_a,e_b,e_c,e_d,mse,mse_db,mcc_cost\n" << std::setprecision(17);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << r.index << ',' << r.err.a << ',' << r.err.b << ',' << r.err.c << ',' << r.err.d << ','
       << smooth[i] << ',' << to_db(smooth[i]) << ',' << r.cost_mcc << '\n';
  }
  if (!os) throw IoError(path.string(), "write failed");
}

/// One parsed CSV row; `mse` is the smoothed column as written.
struct CurveRow {
  std::size_t iter = 0;
  Quat err;
  double mse = 0;
  double mse_db = 0;
  double mcc_cost = 0;
};

inline std::vector<CurveRow> read_curve_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError(path.string(), "cannot open for reading");
  std::string line;
  if (!std::getline(is, line) || line != "iter,e_a,e_b,e_c,e_d,mse,mse_db,mcc_cost")
    throw IoError(path.string(), "unexpected curve header");
  std::vector<CurveRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    CurveRow row;
    char comma = 0;
    ls >> row.iter >> comma >> row.err.a >> comma >> row.err.b >> comma >> row.err.c >> comma >>
        row.err.d >> comma >> row.mse >> comma >> row.mse_db >> comma >> row.mcc_cost;
    if (!ls) throw IoError(path.string(), "malformed row: " + line);
    rows.push_back(row);
  }
  return rows;
}

inline void write_summary_csv(std::span<const RunSummary> runs, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError(path.string(), "cannot open for writing");
  os << "rule,trial,final_mse,final_mse_db\n" << std::setprecision(17);
  for (const auto& r : runs)
    os << to_string(r.rule) << ',' << r.trial << ',' << r.final_mse << ',' << r.final_mse_db << '\n';
  if (!os) throw IoError(path.string(), "write failed");
}

/// Training stream shared by every trial before noise: the embedded series,
/// truncated to the iteration budget.
inline std::vector<Sample<double>> clean_stream(const ExperimentSpec& spec) {
  MackeyGlassConfig mg = spec.mg;
  mg.n_samples = spec.train.iterations + kWindow;
  auto series = mackey_glass(mg);
  if (spec.normalize) series = rescale(series, spec.norm_lo, spec.norm_hi);
  return embed(series, kWindow);
}

/// Thrown by run_experiment with trial and rule context attached.
class TrialDivergence : public DivergenceError {
 public:
  TrialDivergence(std::size_t iteration, std::size_t trial, Rule rule)
      : DivergenceError(iteration, "trial " + std::to_string(trial) + ", rule " +
                                       std::string(to_string(rule))),
        trial_(trial), rule_(rule) {}
  std::size_t trial() const noexcept { return trial_; }
  Rule rule() const noexcept { return rule_; }

 private:
  std::size_t trial_;
  Rule rule_;
};

/// Runs one trial: noise and initialization are drawn once and shared by every
/// requested rule.
inline std::vector<RunSummary> run_trial(const ExperimentSpec& spec,
                                         const std::vector<Sample<double>>& clean, std::size_t trial) {
  const auto stream = add_noise(clean, spec.noise_for_trial(trial));
  std::mt19937_64 init_rng(spec.derive_seed(trial, 2));
  const auto params0 = random_params<double>(kWindow, spec.hidden_n, init_rng, spec.init_scale);

  std::vector<RunSummary> out;
  for (Rule rule : rules_of(spec.rule)) {
    TrainResult<double> result;
    try {
      result = train(params0, std::span<const Sample<double>>(stream), spec.train, rule);
    } catch (const DivergenceError& e) {
      throw TrialDivergence(e.iteration(), trial, rule);
    }
    RunSummary s;
    s.rule = rule;
    s.trial = trial;
    s.final_mse = final_mse(result.curve);
    s.final_mse_db = to_db(s.final_mse);
    if (!spec.out_dir.empty()) {
      std::ostringstream name;
      name << to_string(spec.scenario) << '_' << to_string(rule) << "_trial" << std::setw(3)
           << std::setfill('0') << trial << ".csv";
      s.curve_path = spec.out_dir / name.str();
      write_curve_csv(result.curve, s.curve_path, spec.smoothing_window);
    }
    s.curve = std::move(result.curve);
    out.push_back(std::move(s));
  }
  return out;
}

/// All trials, run concurrently; summaries ordered by (trial, rule).
inline std::vector<RunSummary> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  if (!spec.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(spec.out_dir, ec);
    if (ec) throw IoError(spec.out_dir.string(), "cannot create output directory");
  }
  const auto clean = clean_stream(spec);

  std::vector<std::future<std::vector<RunSummary>>> jobs;
  jobs.reserve(spec.trials);
  for (std::size_t t = 0; t < spec.trials; ++t)
    jobs.push_back(std::async(std::launch::async, [&spec, &clean, t] { return run_trial(spec, clean, t); }));

  std::vector<RunSummary> all;
  for (auto& job : jobs) {
    auto part = job.get();
    for (auto& s : part) all.push_back(std::move(s));
  }
  if (!spec.out_dir.empty()) write_summary_csv(all, spec.out_dir / "summary.csv");
  return all;
}

inline double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

// --- config files ---------------------------------------------------------

/// `[section]` headers and `key = value` lines; `#` and `;` start comments.
/// Keys are returned as "section.key".
inline std::map<std::string, std::string> parse_ini(std::istream& is, const std::string& origin = "config") {
  auto trim = [](std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
    return s;
  };
  std::map<std::string, std::string> kv;
  std::string section, line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find_first_of("#;"); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin + ":" + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    kv[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return kv;
}

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected a number, got '" + v + "'");
  }
}

inline std::uint64_t to_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v.front() == '-') throw std::invalid_argument(v);
    const auto out = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected a non-negative integer, got '" + v + "'");
  }
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("'" + key + "': expected true or false, got '" + v + "'");
}

}  // namespace detail

/// Applies parsed key/values onto `spec`; unknown keys are an error.
inline void apply_config(ExperimentSpec& spec, const std::map<std::string, std::string>& kv) {
  using detail::to_bool;
  using detail::to_double;
  using detail::to_uint;
  for (const auto& [key, v] : kv) {
    if (key == "experiment.scenario") spec.scenario = parse_scenario(v);
    else if (key == "experiment.rule") spec.rule = parse_rule(v);
    else if (key == "experiment.hidden_n") spec.hidden_n = to_uint(key, v);
    else if (key == "experiment.trials") spec.trials = to_uint(key, v);
    else if (key == "experiment.smoothing_window") spec.smoothing_window = to_uint(key, v);
    else if (key == "experiment.init_scale") spec.init_scale = to_double(key, v);
    else if (key == "experiment.out_dir") spec.out_dir = v;
    else if (key == "experiment.normalize") spec.normalize = to_bool(key, v);
    else if (key == "experiment.norm_lo") spec.norm_lo = to_double(key, v);
    else if (key == "experiment.norm_hi") spec.norm_hi = to_double(key, v);
    else if (key == "train.eta_q") spec.train.eta_q = to_double(key, v);
    else if (key == "train.eta_v") spec.train.eta_v = to_double(key, v);
    else if (key == "train.eta_p") spec.train.eta_p = to_double(key, v);
    else if (key == "train.eta_w") spec.train.eta_w = to_double(key, v);
    else if (key == "train.sigma") spec.train.sigma = to_double(key, v);
    else if (key == "train.iterations") spec.train.iterations = to_uint(key, v);
    else if (key == "train.seed") spec.train.seed = to_uint(key, v);
    else if (key == "mackey_glass.tau") spec.mg.tau = to_double(key, v);
    else if (key == "mackey_glass.x0") spec.mg.x0 = to_double(key, v);
    else if (key == "mackey_glass.dt") spec.mg.dt = to_double(key, v);
    else if (key == "mackey_glass.sample_stride") spec.mg.sample_stride = to_uint(key, v);
    else if (key == "mackey_glass.transient") spec.mg.transient = to_uint(key, v);
    else if (key == "noise.gaussian_std") spec.gaussian.std = to_double(key, v);
    else if (key == "noise.impulse_prob") spec.impulsive.prob = to_double(key, v);
    else if (key == "noise.impulse_bg_std") spec.impulsive.bg_std = to_double(key, v);
    else if (key == "noise.impulse_std") spec.impulsive.impulse_std = to_double(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

inline ExperimentSpec load_config(const std::filesystem::path& path, ExperimentSpec spec = {}) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file: " + path.string());
  apply_config(spec, parse_ini(is, path.string()));
  return spec;
}

}  // namespace qmlp
