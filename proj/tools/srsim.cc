// Command-line front end: run experiments, parameter sweeps and action
// histograms over the bandit spatial-reuse simulator.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srsim/harness.h"

namespace {

struct CliOptions {
  std::string config_file;
  std::string scenario = "grid";
  int n_wns = 4;
  std::string policy = "thompson";
  std::string mode = "concurrent";
  int iterations = 10000;
  int reps = 100;
  uint64_t seed = 1;
  double eps0 = 1.0;
  double eta0 = 0.1;
  double gamma = 0.0;
  double alpha = 4.0;
  std::string out = "out";
  bool trace = false;
  bool oracle = false;
  int threads = 0;
  std::string powers;
  int channels = 3;
  std::string intervals;
  std::string activations;
  std::string reward_ref;
  double pl0 = 5.0;
  double d_obs = 5.0;
  double noise = -100.0;
  double bandwidth = 20.0;
  double leakage = 20.0;
};

void add_common_options(CLI::App* cmd, CliOptions* opt) {
  cmd->add_option("--config", opt->config_file,
                  "flat key=value config file; command-line flags override");
  cmd->add_option("--scenario", opt->scenario, "grid | random | dynamic");
  cmd->add_option("--n-wns", opt->n_wns, "number of wireless networks");
  cmd->add_option("--policy", opt->policy,
                  "egreedy | exp3 | ucb | thompson | static");
  cmd->add_option("--mode", opt->mode, "concurrent | sequential");
  cmd->add_option("--iterations", opt->iterations, "learning iterations");
  cmd->add_option("--reps", opt->reps, "independent repetitions");
  cmd->add_option("--seed", opt->seed, "root seed");
  cmd->add_option("--eps0", opt->eps0, "egreedy initial exploration rate");
  cmd->add_option("--eta0", opt->eta0, "exp3 initial learning rate");
  cmd->add_option("--gamma", opt->gamma, "exp3 exploration floor");
  cmd->add_option("--alpha", opt->alpha, "path-loss exponent");
  cmd->add_option("--out", opt->out, "output directory");
  cmd->add_flag("--trace", opt->trace, "write one trace CSV per repetition");
  cmd->add_flag("--oracle", opt->oracle,
                "also compute and export the proportional-fairness baseline");
  cmd->add_option("--threads", opt->threads,
                  "worker threads (0 = hardware concurrency)");
  cmd->add_option("--channels", opt->channels, "number of channels");
  cmd->add_option("--powers", opt->powers,
                  "comma-separated transmit powers in dBm");
  cmd->add_option("--intervals", opt->intervals,
                  "learning intervals, e.g. 1-100,101-500");
  cmd->add_option("--activations", opt->activations,
                  "dynamic-scenario activation iterations, e.g. 0,0,2500,5000");
  cmd->add_option("--reward-ref", opt->reward_ref,
                  "reward normalization power: own | max");
  cmd->add_option("--pl0", opt->pl0, "path loss at 1 m, dB");
  cmd->add_option("--d-obs", opt->d_obs, "average obstacle spacing, m");
  cmd->add_option("--noise", opt->noise, "floor noise, dBm");
  cmd->add_option("--bandwidth", opt->bandwidth, "channel width, MHz");
  cmd->add_option("--leakage", opt->leakage,
                  "adjacent-channel attenuation per channel step, dB");
}

// Build the experiment config in precedence order: defaults, then the config
// file, then any flag the user actually passed.
srsim::ExperimentConfig make_config(const CLI::App* cmd,
                                    const CliOptions& opt) {
  srsim::ExperimentConfig config;
  if (!opt.config_file.empty()) {
    for (const auto& [key, value] :
         srsim::parse_config_file(opt.config_file)) {
      srsim::apply_key_value(config, key, value);
    }
  }
  auto passed = [&](const std::string& flag) {
    return cmd->count(flag) > 0;
  };
  auto set = [&](const std::string& flag, const std::string& key,
                 const std::string& value) {
    if (passed(flag)) {
      srsim::apply_key_value(config, key, value);
    }
  };
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  set("--scenario", "scenario", opt.scenario);
  set("--n-wns", "n-wns", std::to_string(opt.n_wns));
  set("--policy", "policy", opt.policy);
  set("--mode", "mode", opt.mode);
  set("--iterations", "iterations", std::to_string(opt.iterations));
  set("--reps", "reps", std::to_string(opt.reps));
  set("--seed", "seed", std::to_string(opt.seed));
  set("--eps0", "eps0", num(opt.eps0));
  set("--eta0", "eta0", num(opt.eta0));
  set("--gamma", "gamma", num(opt.gamma));
  set("--alpha", "alpha", num(opt.alpha));
  set("--out", "out", opt.out);
  if (opt.trace) srsim::apply_key_value(config, "trace", "true");
  if (opt.oracle) srsim::apply_key_value(config, "oracle", "true");
  set("--threads", "threads", std::to_string(opt.threads));
  set("--channels", "channels", std::to_string(opt.channels));
  set("--powers", "powers", opt.powers);
  set("--intervals", "intervals", opt.intervals);
  set("--activations", "activations", opt.activations);
  set("--reward-ref", "reward-ref", opt.reward_ref);
  set("--pl0", "pl0", num(opt.pl0));
  set("--d-obs", "d-obs", num(opt.d_obs));
  set("--noise", "noise", num(opt.noise));
  set("--bandwidth", "bandwidth", num(opt.bandwidth));
  set("--leakage", "leakage", num(opt.leakage));
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized spatial-reuse bandit simulator"};
  app.require_subcommand(1);

  CliOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "run an experiment and write summary (and optional trace) CSVs");
  add_common_options(run_cmd, &run_opt);

  CliOptions sweep_opt;
  std::string sweep_values = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "sweep eps0 (egreedy) or eta0 (exp3) over a value list");
  add_common_options(sweep_cmd, &sweep_opt);
  sweep_cmd->add_option("--values", sweep_values,
                        "comma-separated parameter values");

  CliOptions hist_opt;
  std::string hist_trace_file;
  std::string hist_out_file = "histogram.csv";
  CLI::App* hist_cmd = app.add_subcommand(
      "hist", "per-WN action frequencies from a trace CSV");
  add_common_options(hist_cmd, &hist_opt);
  hist_cmd->add_option("--trace-file", hist_trace_file, "input trace CSV")
      ->required();
  hist_cmd->add_option("--out-file", hist_out_file, "output histogram CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      const srsim::ExperimentConfig config = make_config(run_cmd, run_opt);
      srsim::run_experiment(config);
      std::cout << "summary written to "
                << (config.out_dir / "summary.csv").string() << "\n";
    } else if (sweep_cmd->parsed()) {
      const srsim::ExperimentConfig config = make_config(sweep_cmd, sweep_opt);
      std::vector<double> values;
      std::string token;
      std::istringstream in(sweep_values);
      while (std::getline(in, token, ',')) {
        if (!token.empty()) {
          values.push_back(std::stod(token));
        }
      }
      srsim::tuning_sweep(config, values);
      std::cout << "sweep written to "
                << (config.out_dir / "sweep.csv").string() << "\n";
    } else if (hist_cmd->parsed()) {
      const srsim::ExperimentConfig config = make_config(hist_cmd, hist_opt);
      const srsim::TraceData trace = srsim::read_trace_csv(hist_trace_file);
      const srsim::ArmSpace arms = srsim::arm_space(config);
      const auto rows = srsim::action_histogram(trace.records, arms);
      srsim::write_histogram_csv(hist_out_file, rows);
      std::cout << "histogram written to " << hist_out_file << "\n";
    }
  } catch (const srsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
