#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <json.hpp>

#include "srsim/arms.h"
#include "srsim/link_budget.h"
#include "srsim/policies.h"
#include "srsim/radio.h"
#include "srsim/scenario.h"

namespace srsim {

enum class RunMode { concurrent, sequential };

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& name);

// Which transmit power the isolation throughput is evaluated at when
// normalizing the reward. own_arm reproduces r = 1 in isolation for every
// power; max_power makes r an absolute efficiency across arms.
enum class RewardRef { own_arm, max_power };

// One trace row. Iterations are 1-based; a WN is active from its activation
// iteration onward. Inactive rows carry zero throughput and an unset (NaN)
// reward.
struct IterationRecord {
  int iteration = 0;
  int wn_id = 0;
  Arm arm{};
  bool active = false;
  double throughput_mbps = 0.0;
  double reward = 0.0;
};

struct StepResult {
  double throughput_mbps = 0.0;
  double reward = 0.0;
};

struct RunParams {
  PolicyKind policy = PolicyKind::thompson;
  RunMode mode = RunMode::concurrent;
  int iterations = 10000;
  PolicyParams policy_params{};
  RadioParams radio{};
  RewardRef reward_ref = RewardRef::own_arm;
};

struct RunResult {
  std::vector<IterationRecord> records;  // iterations x N, iteration-major
  std::vector<nlohmann::json> final_policy_states;
  RunParams params{};
  uint64_t seed = 0;
};

// Rounds a value to six significant decimal digits, the trace precision.
// Rewards and throughputs are quantized at the source so that every
// statistic is exactly recomputable from the CSV trace.
double quantize6(double value);

// Per-WN (throughput, reward) for one joint action profile. Pure; inactive
// entries yield zero throughput and NaN reward.
std::vector<StepResult> step_throughputs(const std::vector<WnAction>& profile,
                                         const LinkBudget& budget,
                                         const RadioParams& params,
                                         const ArmSpace& arms,
                                         RewardRef reward_ref);

// Same computation for a single WN; used by the regret replay so that
// replayed rewards match logged rewards bit for bit.
StepResult step_throughput_one(int wn, const std::vector<WnAction>& profile,
                               const LinkBudget& budget,
                               const RadioParams& params, const ArmSpace& arms,
                               RewardRef reward_ref);

// Custom policy construction hook; tests use it to inject probe policies.
using PolicyFactory = std::function<std::unique_ptr<Policy>(
    int wn_id, int num_arms, int initial_arm)>;

// Runs the full simulation loop (concurrent or sequential per params.mode).
// Deterministic given (deployment, params, seed).
RunResult run_simulation(const Deployment& deployment, const ArmSpace& arms,
                         const RunParams& params, uint64_t seed,
                         const PolicyFactory& factory = nullptr);

}  // namespace srsim
