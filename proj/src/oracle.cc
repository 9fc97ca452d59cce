#include "srsim/oracle.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace srsim {

std::string to_string(OracleObjective objective) {
  return objective == OracleObjective::proportional_fair ? "proportional_fair"
                                                         : "max_aggregate";
}

namespace {

double profile_objective(const std::vector<double>& tpts,
                         OracleObjective objective) {
  double value = 0.0;
  for (double t : tpts) {
    if (objective == OracleObjective::proportional_fair) {
      if (t <= 0.0) {
        return -std::numeric_limits<double>::infinity();
      }
      value += std::log(t);
    } else {
      value += t;
    }
  }
  return value;
}

}  // namespace

OracleResult brute_force(const LinkBudget& budget, const RadioParams& params,
                         const ArmSpace& arms, OracleObjective objective,
                         uint64_t profile_cap, bool reverse_order) {
  const int n = budget.size();
  const int k = arms.size();

  uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > profile_cap / static_cast<uint64_t>(k)) {
      throw std::invalid_argument(
          "brute_force: K^N exceeds the profile cap; reduce the number of "
          "WNs or use max_aggregate sampling instead");
    }
    total *= static_cast<uint64_t>(k);
  }

  std::vector<WnAction> profile(n);
  std::vector<int> indices(n);
  OracleResult best;
  best.objective = objective;
  best.objective_value = -std::numeric_limits<double>::infinity();
  best.profiles_evaluated = total;

  for (uint64_t step = 0; step < total; ++step) {
    const uint64_t id = reverse_order ? total - 1 - step : step;
    // Mixed-radix decode; indices[0] is the most significant digit so that
    // ascending id order is lexicographic order of the index vector.
    uint64_t rest = id;
    for (int i = n - 1; i >= 0; --i) {
      indices[i] = static_cast<int>(rest % static_cast<uint64_t>(k));
      rest /= static_cast<uint64_t>(k);
    }
    for (int i = 0; i < n; ++i) {
      profile[i] = {arms.arm(indices[i]), true};
    }
    std::vector<double> tpts(n);
    const auto step_result = step_throughputs(profile, budget, params, arms,
                                              RewardRef::own_arm);
    for (int i = 0; i < n; ++i) {
      tpts[i] = step_result[i].throughput_mbps;
    }
    const double value = profile_objective(tpts, objective);
    const bool better =
        value > best.objective_value ||
        (value == best.objective_value && indices < best.best_profile_indices);
    if (better || best.best_profile_indices.empty()) {
      best.objective_value = value;
      best.best_profile_indices = indices;
      best.per_wn_throughput_mbps = tpts;
    }
  }

  best.best_profile.clear();
  best.aggregate_mbps = 0.0;
  for (int i = 0; i < n; ++i) {
    best.best_profile.push_back(arms.arm(best.best_profile_indices[i]));
    best.aggregate_mbps += best.per_wn_throughput_mbps[i];
  }
  return best;
}

std::vector<std::vector<double>> empirical_regret(const RunResult& trace,
                                                  const LinkBudget& budget,
                                                  const RadioParams& params,
                                                  const ArmSpace& arms) {
  const int n = budget.size();
  const int k = arms.size();
  const int iterations = trace.params.iterations;
  if (trace.records.size() != static_cast<size_t>(iterations) * n) {
    throw std::invalid_argument("empirical_regret: incomplete trace");
  }

  std::vector<std::vector<double>> curves(
      n, std::vector<double>(iterations, 0.0));

  std::vector<WnAction> profile(n);
  // replay[a][t]: WN i's reward at iteration t+1 if it had played arm a all
  // along, against the logged opponent actions.
  std::vector<std::vector<double>> replay(
      k, std::vector<double>(iterations, 0.0));
  for (int i = 0; i < n; ++i) {
    std::vector<double> totals(k, 0.0);
    std::vector<double> logged(iterations, 0.0);
    std::vector<bool> active(iterations, false);
    for (int t = 0; t < iterations; ++t) {
      for (int j = 0; j < n; ++j) {
        const IterationRecord& rec =
            trace.records[static_cast<size_t>(t) * n + j];
        profile[j] = {rec.arm, rec.active};
      }
      const IterationRecord& own =
          trace.records[static_cast<size_t>(t) * n + i];
      active[t] = own.active;
      logged[t] = own.reward;
      if (!own.active) {
        for (int a = 0; a < k; ++a) {
          replay[a][t] = 0.0;
        }
        continue;
      }
      for (int a = 0; a < k; ++a) {
        profile[i] = {arms.arm(a), true};
        const StepResult r = step_throughput_one(
            i, profile, budget, params, arms, trace.params.reward_ref);
        replay[a][t] = r.reward;
        totals[a] += r.reward;
      }
    }
    int best_arm = 0;
    for (int a = 1; a < k; ++a) {
      if (totals[a] > totals[best_arm]) {
        best_arm = a;
      }
    }
    double cumulative = 0.0;
    for (int t = 0; t < iterations; ++t) {
      if (active[t]) {
        cumulative += replay[best_arm][t] - logged[t];
      }
      curves[i][t] = cumulative;
    }
  }
  return curves;
}

void write_oracle_file(const std::filesystem::path& path,
                       const OracleResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write oracle file: " + path.string());
  }
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
  };
  out << "objective=" << to_string(result.objective) << "\n";
  out << "objective_value=" << fmt(result.objective_value) << "\n";
  out << "aggregate_mbps=" << fmt(result.aggregate_mbps) << "\n";
  out << "profiles_evaluated=" << result.profiles_evaluated << "\n";
  out << "best_arms=";
  for (size_t i = 0; i < result.best_profile_indices.size(); ++i) {
    out << (i ? "," : "") << result.best_profile_indices[i];
  }
  out << "\n";
  out << "best_profile=";
  for (size_t i = 0; i < result.best_profile.size(); ++i) {
    out << (i ? "," : "") << result.best_profile[i].channel << ":"
        << fmt(result.best_profile[i].tx_power_dbm);
  }
  out << "\n";
  out << "per_wn_throughput_mbps=";
  for (size_t i = 0; i < result.per_wn_throughput_mbps.size(); ++i) {
    out << (i ? "," : "") << fmt(result.per_wn_throughput_mbps[i]);
  }
  out << "\n";
}

}  // namespace srsim
