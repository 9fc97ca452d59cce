#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "srsim/orchestrator.h"

namespace srsim {

enum class OracleObjective { proportional_fair, max_aggregate };

std::string to_string(OracleObjective objective);

struct OracleResult {
  OracleObjective objective = OracleObjective::proportional_fair;
  std::vector<Arm> best_profile;             // one arm per WN
  std::vector<int> best_profile_indices;     // same, as arm indices
  double objective_value = 0.0;              // sum log(Mbps) or sum Mbps
  std::vector<double> per_wn_throughput_mbps;
  double aggregate_mbps = 0.0;               // sum of per-WN throughputs
  uint64_t profiles_evaluated = 0;
};

inline constexpr uint64_t kDefaultProfileCap = 10'000'000;

// Evaluates every joint action profile (all WNs active) and returns the
// maximizer. Proportional fairness maximizes sum log(throughput); profiles
// where any WN gets zero throughput score -inf. Equal-valued profiles
// tie-break toward the lexicographically smallest arm-index vector.
// reverse_order flips the enumeration direction; the result must not change
// (used to validate order independence).
OracleResult brute_force(const LinkBudget& budget, const RadioParams& params,
                         const ArmSpace& arms, OracleObjective objective,
                         uint64_t profile_cap = kDefaultProfileCap,
                         bool reverse_order = false);

// Cumulative hindsight regret per WN: the gap to the best fixed own arm
// replayed against the logged opponent actions. curve[wn][t-1] is the regret
// accumulated through iteration t; iterations where the WN is inactive
// contribute zero.
std::vector<std::vector<double>> empirical_regret(const RunResult& trace,
                                                  const LinkBudget& budget,
                                                  const RadioParams& params,
                                                  const ArmSpace& arms);

// Small key-value export consumed by the harness for normalized plots.
void write_oracle_file(const std::filesystem::path& path,
                       const OracleResult& result);

}  // namespace srsim
