#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "srsim/oracle.h"
#include "srsim/orchestrator.h"

namespace srsim {

enum class ScenarioKind { grid, random_drop, dynamic };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

// 1-based inclusive iteration range.
struct Interval {
  int start = 1;
  int end = 1;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  ScenarioKind scenario = ScenarioKind::grid;
  int n_wns = 4;
  PolicyKind policy = PolicyKind::thompson;
  RunMode mode = RunMode::concurrent;
  int iterations = 10000;
  int repetitions = 100;
  uint64_t seed = 1;

  PolicyParams policy_params{};
  RadioParams radio{};
  ScenarioConfig scenario_config{};
  int n_channels = 3;
  std::vector<double> tx_powers_dbm{-15.0, 0.0, 15.0, 30.0};
  RewardRef reward_ref = RewardRef::own_arm;

  // Empty means the default learning intervals, clipped to [1, iterations].
  std::vector<Interval> intervals;

  std::filesystem::path out_dir = "out";
  bool write_traces = false;
  bool with_oracle = false;  // also compute and export the PF baseline
  int threads = 0;           // 0 = hardware concurrency
  uint64_t oracle_profile_cap = kDefaultProfileCap;
};

// The default learning intervals [1-100, 101-500, 501-1000, 1001-2500,
// 2501-10000], clipped or extended so they exactly cover [1, iterations].
std::vector<Interval> default_intervals(int iterations);

// Resolved intervals for a config (explicit ones validated, or defaults).
std::vector<Interval> resolved_intervals(const ExperimentConfig& config);

// Throws ConfigError on any invalid combination.
void validate(const ExperimentConfig& config);

uint64_t repetition_seed(uint64_t seed, int repetition);

ArmSpace arm_space(const ExperimentConfig& config);
RunParams run_params(const ExperimentConfig& config);
Deployment build_deployment(const ExperimentConfig& config,
                            uint64_t rep_seed);

struct SummaryRow {
  int n_wns = 0;
  std::string policy;
  std::string mode;
  Interval interval{};
  double mean_tpt_mbps = 0.0;      // across WNs, iterations, repetitions
  double temporal_std_mbps = 0.0;  // per-WN std over time, averaged
  double pf_fraction = 0.0;        // NaN when the PF baseline is not computed
  int reps = 0;
};

struct SweepRow {
  std::string policy;
  std::string param;  // "eps0" or "eta0"
  double value = 0.0;
  double mean_aggregate_mbps = 0.0;
  double std_aggregate_mbps = 0.0;
  int reps = 0;
};

struct HistogramRow {
  int wn_id = 0;
  int arm = 0;
  int channel = 0;
  double tx_power_dbm = 0.0;
  double frequency = 0.0;
};

// Runs repetitions (in a worker pool), writes summary.csv plus optional
// per-repetition trace and oracle files, and returns the summary rows.
// Output is byte-identical regardless of thread count.
std::vector<SummaryRow> run_experiment(const ExperimentConfig& config);

// One row per parameter value: mean and std over repetitions of the
// aggregate throughput. Only meaningful for egreedy (eps0) and exp3 (eta0).
std::vector<SweepRow> tuning_sweep(const ExperimentConfig& config,
                                   const std::vector<double>& values);

// Per-WN arm selection frequencies over active iterations.
std::vector<HistogramRow> action_histogram(
    const std::vector<IterationRecord>& records, const ArmSpace& arms);

// --- CSV / file formats -------------------------------------------------
// All floats are rendered with 6 significant digits and LF line endings so
// golden files compare bit-exactly.

std::string format_g6(double value);

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<IterationRecord>& records);

struct TraceData {
  int n_wns = 0;
  int iterations = 0;
  std::vector<IterationRecord> records;
};
TraceData read_trace_csv(const std::filesystem::path& path);

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<SummaryRow>& rows);
void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepRow>& rows);
void write_histogram_csv(const std::filesystem::path& path,
                         const std::vector<HistogramRow>& rows);

// Flat key=value config file (same keys as the CLI long options).
std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path);
void apply_key_value(ExperimentConfig& config, const std::string& key,
                     const std::string& value);

}  // namespace srsim
