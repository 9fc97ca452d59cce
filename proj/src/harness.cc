#include "srsim/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace srsim {

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::grid: return "grid";
    case ScenarioKind::random_drop: return "random";
    case ScenarioKind::dynamic: return "dynamic";
  }
  throw std::logic_error("unknown scenario kind");
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  if (name == "grid") return ScenarioKind::grid;
  if (name == "random") return ScenarioKind::random_drop;
  if (name == "dynamic") return ScenarioKind::dynamic;
  throw ConfigError("unknown scenario: " + name);
}

std::vector<Interval> default_intervals(int iterations) {
  static const std::vector<Interval> base{
      {1, 100}, {101, 500}, {501, 1000}, {1001, 2500}, {2501, 10000}};
  std::vector<Interval> out;
  for (const Interval& iv : base) {
    if (iv.start > iterations) {
      break;
    }
    out.push_back({iv.start, std::min(iv.end, iterations)});
  }
  if (!out.empty() && out.back().end < iterations) {
    out.back().end = iterations;  // iterations beyond 10,000
  }
  return out;
}

std::vector<Interval> resolved_intervals(const ExperimentConfig& config) {
  return config.intervals.empty() ? default_intervals(config.iterations)
                                  : config.intervals;
}

void validate(const ExperimentConfig& config) {
  if (config.n_wns < 1) {
    throw ConfigError("n-wns must be >= 1");
  }
  if ((config.scenario == ScenarioKind::grid ||
       config.scenario == ScenarioKind::dynamic) &&
      config.n_wns != 4) {
    throw ConfigError("grid and dynamic scenarios are fixed at 4 WNs");
  }
  if (config.iterations < 1) {
    throw ConfigError("iterations must be >= 1");
  }
  if (config.repetitions < 1) {
    throw ConfigError("reps must be >= 1");
  }
  if (config.n_channels < 1 || config.tx_powers_dbm.empty()) {
    throw ConfigError("need >= 1 channel and a non-empty power set");
  }
  if (config.policy_params.gamma < 0.0 || config.policy_params.gamma > 1.0) {
    throw ConfigError("gamma must lie in [0, 1]");
  }
  if (config.policy_params.eps0 < 0.0 || config.policy_params.eta0 < 0.0) {
    throw ConfigError("eps0 and eta0 must be >= 0");
  }
  if (config.threads < 0) {
    throw ConfigError("threads must be >= 0");
  }
  if (config.scenario == ScenarioKind::dynamic) {
    if (config.scenario_config.activation_iterations.size() != 4) {
      throw ConfigError("dynamic scenario needs exactly 4 activation entries");
    }
    for (int a : config.scenario_config.activation_iterations) {
      if (a < 0 || a > config.iterations) {
        throw ConfigError("activation iterations must lie in [0, iterations]");
      }
    }
  }
  const std::vector<Interval> intervals = resolved_intervals(config);
  if (intervals.empty() || intervals.front().start != 1 ||
      intervals.back().end != config.iterations) {
    throw ConfigError("intervals must cover [1, iterations]");
  }
  for (size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].start > intervals[i].end) {
      throw ConfigError("interval start must not exceed its end");
    }
    if (i > 0 && intervals[i].start != intervals[i - 1].end + 1) {
      throw ConfigError("intervals must be ordered, disjoint and contiguous");
    }
  }
  if (config.with_oracle) {
    // Fail early instead of mid-experiment.
    const double k = static_cast<double>(config.n_channels) *
                     static_cast<double>(config.tx_powers_dbm.size());
    if (std::pow(k, config.n_wns) >
        static_cast<double>(config.oracle_profile_cap)) {
      throw ConfigError(
          "oracle: K^N exceeds the profile cap; reduce the number of WNs or "
          "raise profile-cap");
    }
  }
}

uint64_t repetition_seed(uint64_t seed, int repetition) {
  return derive_seed(seed, streams::kRepetitionBase +
                               static_cast<uint64_t>(repetition));
}

ArmSpace arm_space(const ExperimentConfig& config) {
  return ArmSpace(config.n_channels, config.tx_powers_dbm);
}

RunParams run_params(const ExperimentConfig& config) {
  RunParams p;
  p.policy = config.policy;
  p.mode = config.mode;
  p.iterations = config.iterations;
  p.policy_params = config.policy_params;
  p.radio = config.radio;
  p.reward_ref = config.reward_ref;
  return p;
}

Deployment build_deployment(const ExperimentConfig& config,
                            uint64_t rep_seed) {
  ScenarioConfig sc = config.scenario_config;
  sc.total_iterations = config.iterations;
  switch (config.scenario) {
    case ScenarioKind::grid:
      return build_grid(sc, config.n_wns, rep_seed);
    case ScenarioKind::random_drop:
      return build_random(sc, config.n_wns, rep_seed);
    case ScenarioKind::dynamic:
      return build_dynamic(sc, config.n_wns, rep_seed);
  }
  throw std::logic_error("unknown scenario kind");
}

namespace {

double sample_std(double sum, double sum_sq, long count) {
  if (count < 2) {
    return 0.0;
  }
  const double mean = sum / static_cast<double>(count);
  const double var =
      (sum_sq - static_cast<double>(count) * mean * mean) /
      static_cast<double>(count - 1);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

// Per-repetition statistics folded per interval.
struct RepStats {
  std::vector<double> mean_tpt;        // across WN x iteration cells
  std::vector<double> temporal_std;    // per-WN std over time, WN-averaged
  std::vector<double> mean_aggregate;  // per-iteration network sum, averaged
  double overall_mean_aggregate = 0.0;
  double pf_aggregate = std::numeric_limits<double>::quiet_NaN();
};

RepStats fold_records(const std::vector<IterationRecord>& records, int n_wns,
                      int iterations, const std::vector<Interval>& intervals) {
  RepStats stats;
  double overall_sum = 0.0;
  for (const Interval& iv : intervals) {
    const long len = iv.end - iv.start + 1;
    double cell_sum = 0.0;
    std::vector<double> wn_sum(n_wns, 0.0);
    std::vector<double> wn_sum_sq(n_wns, 0.0);
    for (int it = iv.start; it <= iv.end; ++it) {
      for (int w = 0; w < n_wns; ++w) {
        const IterationRecord& rec =
            records[static_cast<size_t>(it - 1) * n_wns + w];
        // Inactive WNs count as zero throughput: they serve no traffic.
        const double tpt = rec.throughput_mbps;
        cell_sum += tpt;
        wn_sum[w] += tpt;
        wn_sum_sq[w] += tpt * tpt;
      }
    }
    stats.mean_tpt.push_back(cell_sum /
                             static_cast<double>(len * n_wns));
    double std_total = 0.0;
    for (int w = 0; w < n_wns; ++w) {
      std_total += sample_std(wn_sum[w], wn_sum_sq[w], len);
    }
    stats.temporal_std.push_back(std_total / static_cast<double>(n_wns));
    stats.mean_aggregate.push_back(cell_sum / static_cast<double>(len));
    overall_sum += cell_sum;
  }
  stats.overall_mean_aggregate =
      overall_sum / static_cast<double>(iterations);
  return stats;
}

// Runs fn(0..jobs-1) on a fixed-size pool. Results must be written to
// per-job slots; aggregation order stays deterministic.
template <typename Fn>
void parallel_for(int jobs, int threads, Fn&& fn) {
  int pool = threads > 0 ? threads
                         : static_cast<int>(std::thread::hardware_concurrency());
  pool = std::max(1, std::min(pool, jobs));
  if (pool == 1) {
    for (int j = 0; j < jobs; ++j) {
      fn(j);
    }
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(pool);
  for (int w = 0; w < pool; ++w) {
    workers.emplace_back([&] {
      while (true) {
        const int j = next.fetch_add(1);
        if (j >= jobs) {
          return;
        }
        try {
          fn(j);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : workers) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace

std::vector<SummaryRow> run_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::vector<Interval> intervals = resolved_intervals(config);
  const ArmSpace arms = arm_space(config);
  const RunParams params = run_params(config);
  std::filesystem::create_directories(config.out_dir);

  std::vector<RepStats> stats(config.repetitions);
  parallel_for(config.repetitions, config.threads, [&](int rep) {
    const uint64_t rep_seed = repetition_seed(config.seed, rep);
    const Deployment deployment = build_deployment(config, rep_seed);
    const RunResult result = run_simulation(deployment, arms, params, rep_seed);
    if (config.write_traces) {
      write_trace_csv(config.out_dir /
                          ("trace_rep" + std::to_string(rep) + ".csv"),
                      result.records);
    }
    RepStats s = fold_records(result.records, deployment.size(),
                              config.iterations, intervals);
    if (config.with_oracle) {
      const LinkBudget budget(deployment, config.radio);
      const OracleResult oracle =
          brute_force(budget, config.radio, arms,
                      OracleObjective::proportional_fair,
                      config.oracle_profile_cap);
      s.pf_aggregate = oracle.aggregate_mbps;
      write_oracle_file(config.out_dir /
                            ("oracle_rep" + std::to_string(rep) + ".txt"),
                        oracle);
    }
    stats[rep] = std::move(s);
  });

  std::vector<SummaryRow> rows;
  for (size_t i = 0; i < intervals.size(); ++i) {
    SummaryRow row;
    row.n_wns = config.n_wns;
    row.policy = to_string(config.policy);
    row.mode = to_string(config.mode);
    row.interval = intervals[i];
    row.reps = config.repetitions;
    double mean_tpt = 0.0;
    double temporal_std = 0.0;
    double pf_fraction = 0.0;
    for (const RepStats& s : stats) {
      mean_tpt += s.mean_tpt[i];
      temporal_std += s.temporal_std[i];
      if (config.with_oracle) {
        pf_fraction += s.mean_aggregate[i] / s.pf_aggregate;
      }
    }
    const double reps = static_cast<double>(config.repetitions);
    row.mean_tpt_mbps = mean_tpt / reps;
    row.temporal_std_mbps = temporal_std / reps;
    row.pf_fraction = config.with_oracle
                          ? pf_fraction / reps
                          : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }

  write_summary_csv(config.out_dir / "summary.csv", rows);
  return rows;
}

std::vector<SweepRow> tuning_sweep(const ExperimentConfig& config,
                                   const std::vector<double>& values) {
  validate(config);
  if (config.policy != PolicyKind::egreedy &&
      config.policy != PolicyKind::exp3) {
    throw ConfigError("tuning sweep only applies to egreedy and exp3");
  }
  if (values.empty()) {
    throw ConfigError("tuning sweep needs at least one parameter value");
  }
  const bool is_egreedy = config.policy == PolicyKind::egreedy;
  const ArmSpace arms = arm_space(config);
  std::filesystem::create_directories(config.out_dir);

  const int reps = config.repetitions;
  const int jobs = static_cast<int>(values.size()) * reps;
  std::vector<double> aggregate(jobs, 0.0);
  parallel_for(jobs, config.threads, [&](int job) {
    const int vi = job / reps;
    const int rep = job % reps;
    ExperimentConfig point = config;
    if (is_egreedy) {
      point.policy_params.eps0 = values[vi];
    } else {
      point.policy_params.eta0 = values[vi];
    }
    const uint64_t rep_seed = repetition_seed(point.seed, rep);
    const Deployment deployment = build_deployment(point, rep_seed);
    const RunResult result =
        run_simulation(deployment, arms, run_params(point), rep_seed);
    const RepStats s =
        fold_records(result.records, deployment.size(), point.iterations,
                     {{1, point.iterations}});
    aggregate[job] = s.overall_mean_aggregate;
  });

  std::vector<SweepRow> rows;
  for (size_t vi = 0; vi < values.size(); ++vi) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
      const double a = aggregate[vi * reps + rep];
      sum += a;
      sum_sq += a * a;
    }
    SweepRow row;
    row.policy = to_string(config.policy);
    row.param = is_egreedy ? "eps0" : "eta0";
    row.value = values[vi];
    row.mean_aggregate_mbps = sum / reps;
    row.std_aggregate_mbps = sample_std(sum, sum_sq, reps);
    row.reps = reps;
    rows.push_back(row);
  }
  write_sweep_csv(config.out_dir / "sweep.csv", rows);
  return rows;
}

std::vector<HistogramRow> action_histogram(
    const std::vector<IterationRecord>& records, const ArmSpace& arms) {
  int n_wns = 0;
  for (const IterationRecord& rec : records) {
    n_wns = std::max(n_wns, rec.wn_id + 1);
  }
  const int k = arms.size();
  std::vector<std::vector<long>> counts(n_wns, std::vector<long>(k, 0));
  std::vector<long> totals(n_wns, 0);
  for (const IterationRecord& rec : records) {
    if (!rec.active) {
      continue;
    }
    counts[rec.wn_id][arms.index_of_arm(rec.arm)] += 1;
    totals[rec.wn_id] += 1;
  }
  std::vector<HistogramRow> rows;
  for (int w = 0; w < n_wns; ++w) {
    for (int a = 0; a < k; ++a) {
      HistogramRow row;
      row.wn_id = w;
      row.arm = a;
      row.channel = arms.arm(a).channel;
      row.tx_power_dbm = arms.arm(a).tx_power_dbm;
      row.frequency = totals[w] > 0 ? static_cast<double>(counts[w][a]) /
                                          static_cast<double>(totals[w])
                                    : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_g6(double value) {
  if (std::isnan(value)) {
    return "";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<IterationRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write trace: " + path.string());
  }
  out << "iteration,wn_id,channel,tx_power_dbm,active,throughput_mbps,reward\n";
  for (const IterationRecord& rec : records) {
    out << rec.iteration << ',' << rec.wn_id << ',' << rec.arm.channel << ','
        << format_g6(rec.arm.tx_power_dbm) << ',' << (rec.active ? 1 : 0)
        << ',' << format_g6(rec.throughput_mbps) << ','
        << format_g6(rec.reward) << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

}  // namespace

TraceData read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read trace: " + path.string());
  }
  TraceData data;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 7) {
      throw std::runtime_error("malformed trace row: " + line);
    }
    IterationRecord rec;
    rec.iteration = std::stoi(f[0]);
    rec.wn_id = std::stoi(f[1]);
    rec.arm.channel = std::stoi(f[2]);
    rec.arm.tx_power_dbm = std::stod(f[3]);
    rec.active = f[4] == "1";
    rec.throughput_mbps = std::stod(f[5]);
    rec.reward = f[6].empty() ? std::numeric_limits<double>::quiet_NaN()
                              : std::stod(f[6]);
    data.records.push_back(rec);
    data.n_wns = std::max(data.n_wns, rec.wn_id + 1);
    data.iterations = std::max(data.iterations, rec.iteration);
  }
  if (data.records.size() !=
      static_cast<size_t>(data.n_wns) * data.iterations) {
    throw std::runtime_error("trace is incomplete: " + path.string());
  }
  return data;
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write summary: " + path.string());
  }
  out << "n_wns,policy,mode,interval_start,interval_end,mean_tpt_mbps,"
         "temporal_std_mbps,pf_fraction,reps\n";
  for (const SummaryRow& row : rows) {
    out << row.n_wns << ',' << row.policy << ',' << row.mode << ','
        << row.interval.start << ',' << row.interval.end << ','
        << format_g6(row.mean_tpt_mbps) << ','
        << format_g6(row.temporal_std_mbps) << ','
        << format_g6(row.pf_fraction) << ',' << row.reps << '\n';
  }
}

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write sweep: " + path.string());
  }
  out << "policy,param,value,mean_aggregate_mbps,std_aggregate_mbps,reps\n";
  for (const SweepRow& row : rows) {
    out << row.policy << ',' << row.param << ',' << format_g6(row.value) << ','
        << format_g6(row.mean_aggregate_mbps) << ','
        << format_g6(row.std_aggregate_mbps) << ',' << row.reps << '\n';
  }
}

void write_histogram_csv(const std::filesystem::path& path,
                         const std::vector<HistogramRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write histogram: " + path.string());
  }
  out << "wn_id,arm,channel,tx_power_dbm,frequency\n";
  for (const HistogramRow& row : rows) {
    out << row.wn_id << ',' << row.arm << ',' << row.channel << ','
        << format_g6(row.tx_power_dbm) << ',' << format_g6(row.frequency)
        << '\n';
  }
}

std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file: " + path.string());
  }
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    return begin == std::string::npos ? std::string()
                                      : s.substr(begin, end - begin + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("malformed config line (want key=value): " + line);
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

namespace {

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("boolean expected for " + key + ": " + value);
}

std::vector<double> parse_double_list(const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split(value, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& value) {
  std::vector<int> out;
  for (const std::string& item : split(value, ',')) {
    out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<Interval> parse_intervals(const std::string& value) {
  std::vector<Interval> out;
  for (const std::string& item : split(value, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      throw ConfigError("interval expected as start-end: " + item);
    }
    out.push_back({std::stoi(item.substr(0, dash)),
                   std::stoi(item.substr(dash + 1))});
  }
  return out;
}

}  // namespace

void apply_key_value(ExperimentConfig& config, const std::string& key,
                     const std::string& value) {
  try {
    if (key == "scenario") {
      config.scenario = scenario_kind_from_string(value);
    } else if (key == "n-wns") {
      config.n_wns = std::stoi(value);
    } else if (key == "policy") {
      config.policy = policy_kind_from_string(value);
    } else if (key == "mode") {
      config.mode = run_mode_from_string(value);
    } else if (key == "iterations") {
      config.iterations = std::stoi(value);
    } else if (key == "reps") {
      config.repetitions = std::stoi(value);
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else if (key == "eps0") {
      config.policy_params.eps0 = std::stod(value);
    } else if (key == "eta0") {
      config.policy_params.eta0 = std::stod(value);
    } else if (key == "gamma") {
      config.policy_params.gamma = std::stod(value);
    } else if (key == "alpha") {
      config.radio.alpha = std::stod(value);
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "trace") {
      config.write_traces = parse_bool(value, key);
    } else if (key == "oracle") {
      config.with_oracle = parse_bool(value, key);
    } else if (key == "threads") {
      config.threads = std::stoi(value);
    } else if (key == "pl0") {
      config.radio.pl0_db = std::stod(value);
    } else if (key == "d-obs") {
      config.radio.d_obs_m = std::stod(value);
    } else if (key == "noise") {
      config.radio.noise_dbm = std::stod(value);
    } else if (key == "bandwidth") {
      config.radio.bandwidth_mhz = std::stod(value);
    } else if (key == "leakage") {
      config.radio.leakage_db_per_channel = std::stod(value);
    } else if (key == "channels") {
      config.n_channels = std::stoi(value);
    } else if (key == "powers") {
      config.tx_powers_dbm = parse_double_list(value);
    } else if (key == "shadow-mean") {
      config.scenario_config.shadow_mean_db = std::stod(value);
    } else if (key == "shadow-std") {
      config.scenario_config.shadow_std_db = std::stod(value);
    } else if (key == "obstacle-min") {
      config.scenario_config.obstacle_min_db = std::stod(value);
    } else if (key == "obstacle-max") {
      config.scenario_config.obstacle_max_db = std::stod(value);
    } else if (key == "ap-sta-distance") {
      config.scenario_config.ap_sta_distance_m = std::stod(value);
    } else if (key == "map-size") {
      const std::vector<double> v = parse_double_list(value);
      if (v.size() != 3) {
        throw ConfigError("map-size expects x,y,z");
      }
      config.scenario_config.map_size_m = {v[0], v[1], v[2]};
    } else if (key == "activations") {
      config.scenario_config.activation_iterations = parse_int_list(value);
    } else if (key == "intervals") {
      config.intervals = parse_intervals(value);
    } else if (key == "reward-ref") {
      if (value == "own") {
        config.reward_ref = RewardRef::own_arm;
      } else if (value == "max") {
        config.reward_ref = RewardRef::max_power;
      } else {
        throw ConfigError("reward-ref must be own or max");
      }
    } else if (key == "exp3-divide-by-k") {
      config.policy_params.exp3_divide_by_k = parse_bool(value, key);
    } else if (key == "ucb-t-floor") {
      config.policy_params.ucb_index_t_floor = std::stoi(value);
    } else if (key == "profile-cap") {
      config.oracle_profile_cap = std::stoull(value);
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad value for " + key + ": " + value);
  } catch (const std::out_of_range&) {
    throw ConfigError("value out of range for " + key + ": " + value);
  }
}

}  // namespace srsim
