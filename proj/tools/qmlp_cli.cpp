// Command-line runner: one-step Mackey–Glass prediction experiments, the
// finite-difference gradient check, and series export.

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "qmlp/qmlp.hpp"

namespace {

enum ExitCode : int { kOk = 0, kDivergence = 1, kConfigError = 2, kGradcheckFail = 3 };

void print_summary(const std::vector<qmlp::RunSummary>& runs) {
  std::cout << std::left << std::setw(6) << "rule" << std::right << std::setw(7) << "trial"
            << std::setw(16) << "final_mse" << std::setw(14) << "final_dB" << "  curve\n";
  for (const auto& r : runs) {
    std::cout << std::left << std::setw(6) << qmlp::to_string(r.rule) << std::right << std::setw(7)
              << r.trial << std::setw(16) << std::setprecision(6) << std::scientific << r.final_mse
              << std::setw(14) << std::fixed << std::setprecision(3) << r.final_mse_db << "  "
              << r.curve_path.string() << '\n';
    std::cout.unsetf(std::ios::floatfield);
  }
  for (auto rule : {qmlp::Rule::mse, qmlp::Rule::mcc}) {
    std::vector<double> finals;
    for (const auto& r : runs)
      if (r.rule == rule) finals.push_back(r.final_mse);
    if (finals.empty()) continue;
    const double med = qmlp::median(finals);
    std::cout << "median " << qmlp::to_string(rule) << ": " << std::setprecision(6) << med << " ("
              << std::fixed << std::setprecision(3) << qmlp::to_db(med) << " dB)\n";
    std::cout.unsetf(std::ios::floatfield);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion MLP trained with MSE and MCC rules on Mackey-Glass prediction"};
  app.require_subcommand(1);

  // predict
  auto* predict = app.add_subcommand("predict", "Run the one-step prediction experiment");
  std::string config_path, scenario, rule, out_dir;
  std::optional<std::size_t> hidden_n, iters, trials, smoothing;
  std::optional<double> eta_q, eta_v, eta_p, eta_w, sigma;
  std::optional<std::uint64_t> seed;
  predict->add_option("-c,--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  predict->add_option("--scenario", scenario, "noiseless | gaussian | impulsive");
  predict->add_option("--rule", rule, "mse | mcc | both");
  predict->add_option("--hidden-n", hidden_n, "Hidden layer width");
  predict->add_option("--eta-q", eta_q, "Output bias step size");
  predict->add_option("--eta-v", eta_v, "Hidden-to-output step size");
  predict->add_option("--eta-p", eta_p, "Hidden bias step size");
  predict->add_option("--eta-w", eta_w, "Input-to-hidden step size");
  predict->add_option("--sigma", sigma, "MCC kernel width");
  predict->add_option("--iters", iters, "Training samples per run");
  predict->add_option("--trials", trials, "Independent paired trials");
  predict->add_option("--seed", seed, "Base seed");
  predict->add_option("--smoothing", smoothing, "Trailing window for the CSV mse column");
  predict->add_option("--out-dir", out_dir, "Directory for curve CSVs and summary.csv");

  // gradcheck
  auto* gradcheck = app.add_subcommand("gradcheck", "Compare analytic gradients with finite differences");
  std::size_t gc_m = 3, gc_n = 2, gc_instances = 100;
  std::uint64_t gc_seed = 1;
  gradcheck->add_option("-m,--input-dim", gc_m, "Input dimension m")->capture_default_str();
  gradcheck->add_option("-n,--hidden-n", gc_n, "Hidden dimension n")->capture_default_str();
  gradcheck->add_option("--instances", gc_instances, "Random instances")->capture_default_str();
  gradcheck->add_option("--seed", gc_seed, "Seed")->capture_default_str();

  // gen-series
  auto* gen = app.add_subcommand("gen-series", "Write a Mackey-Glass series as CSV (t,value)");
  qmlp::MackeyGlassConfig mg;
  std::string series_out = "mackey_glass.csv";
  gen->add_option("--samples", mg.n_samples, "Emitted samples")->capture_default_str();
  gen->add_option("--dt", mg.dt, "Integration step")->capture_default_str();
  gen->add_option("--stride", mg.sample_stride, "Integration steps per sample")->capture_default_str();
  gen->add_option("--tau", mg.tau, "Delay")->capture_default_str();
  gen->add_option("--transient", mg.transient, "Samples discarded first")->capture_default_str();
  gen->add_option("-o,--output", series_out, "Output CSV path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*predict) {
      qmlp::ExperimentSpec spec;
      if (!config_path.empty()) spec = qmlp::load_config(config_path, spec);
      if (!scenario.empty()) spec.scenario = qmlp::parse_scenario(scenario);
      if (!rule.empty()) spec.rule = qmlp::parse_rule(rule);
      if (hidden_n) spec.hidden_n = *hidden_n;
      if (eta_q) spec.train.eta_q = *eta_q;
      if (eta_v) spec.train.eta_v = *eta_v;
      if (eta_p) spec.train.eta_p = *eta_p;
      if (eta_w) spec.train.eta_w = *eta_w;
      if (sigma) spec.train.sigma = *sigma;
      if (iters) spec.train.iterations = *iters;
      if (trials) spec.trials = *trials;
      if (seed) spec.train.seed = *seed;
      if (smoothing) spec.smoothing_window = *smoothing;
      if (!out_dir.empty()) spec.out_dir = out_dir;

      print_summary(qmlp::run_experiment(spec));
      return kOk;
    }
    if (*gradcheck) {
      const auto start = std::chrono::steady_clock::now();
      const auto report = qmlp::run_gradient_check(gc_m, gc_n, gc_instances, gc_seed);
      const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
      std::cout << "gradcheck m=" << gc_m << " n=" << gc_n << " instances=" << gc_instances
                << " tol=" << report.tolerance << '\n';
      for (std::size_t b = 0; b < 4; ++b)
        std::cout << "  " << qmlp::kGradBlocks[b] << ": max rel err " << std::scientific
                  << std::setprecision(3) << report.max_rel_err[b]
                  << (report.max_rel_err[b] < report.tolerance ? "  ok" : "  FAIL") << '\n';
      std::cout.unsetf(std::ios::floatfield);
      std::cout << (report.passed() ? "PASS" : "FAIL") << " (" << std::setprecision(3) << took.count()
                << " s)\n";
      return report.passed() ? kOk : kGradcheckFail;
    }
    if (*gen) {
      const auto series = qmlp::mackey_glass(mg);
      qmlp::write_series_csv(series, mg.sample_spacing(), series_out);
      std::cout << "wrote " << series.size() << " samples to " << series_out << '\n';
      return kOk;
    }
  } catch (const qmlp::DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDivergence;
  } catch (const qmlp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const qmlp::ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const qmlp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
