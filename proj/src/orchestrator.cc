#include "srsim/orchestrator.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>

namespace srsim {

std::string to_string(RunMode mode) {
  return mode == RunMode::concurrent ? "concurrent" : "sequential";
}

RunMode run_mode_from_string(const std::string& name) {
  if (name == "concurrent") return RunMode::concurrent;
  if (name == "sequential") return RunMode::sequential;
  throw std::invalid_argument("unknown mode: " + name);
}

double quantize6(double value) {
  if (!std::isfinite(value)) {
    return value;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

StepResult step_throughput_one(int wn, const std::vector<WnAction>& profile,
                               const LinkBudget& budget,
                               const RadioParams& params, const ArmSpace& arms,
                               RewardRef reward_ref) {
  if (!profile[wn].active) {
    return {0.0, std::numeric_limits<double>::quiet_NaN()};
  }
  const double p_rx = received_power_dbm(profile[wn].arm.tx_power_dbm,
                                         budget.loss_db(wn, wn));
  const double i_dbm = interference_dbm(wn, profile, budget, params);
  const double sinr = sinr_linear(p_rx, i_dbm, params.noise_dbm);
  const double tpt = throughput_mbps(sinr, params.bandwidth_mhz);
  const double ref_tx = reward_ref == RewardRef::own_arm
                            ? profile[wn].arm.tx_power_dbm
                            : arms.max_power_dbm();
  const double optimal = isolation_throughput_mbps(wn, ref_tx, budget, params);
  double r = reward(tpt, optimal);
  if (r > 1.0 + 1e-9) {
    throw std::logic_error("reward exceeded 1: SINR > SNR should not happen");
  }
  r = std::min(std::max(r, 0.0), 1.0);
  return {quantize6(tpt), quantize6(r)};
}

std::vector<StepResult> step_throughputs(const std::vector<WnAction>& profile,
                                         const LinkBudget& budget,
                                         const RadioParams& params,
                                         const ArmSpace& arms,
                                         RewardRef reward_ref) {
  const int n = static_cast<int>(profile.size());
  std::vector<StepResult> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = step_throughput_one(i, profile, budget, params, arms, reward_ref);
  }
  return out;
}

namespace {

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  return sum / static_cast<double>(values.size());
}

}  // namespace

RunResult run_simulation(const Deployment& deployment, const ArmSpace& arms,
                         const RunParams& params, uint64_t seed,
                         const PolicyFactory& factory) {
  if (params.iterations < 1) {
    throw std::invalid_argument("run_simulation: iterations must be >= 1");
  }
  const int n = deployment.size();
  const int n_arms = arms.size();
  const LinkBudget budget(deployment, params.radio);

  // Every WN starts from a uniformly drawn configuration: the static
  // baseline keeps it, and in sequential mode it is transmitted until the
  // WN's first turn. Drawn from a dedicated stream so both modes and all
  // policies see identical geometry and initial conditions.
  Rng init_rng(derive_seed(seed, streams::kInitialArms));
  std::vector<int> current_arm(n);
  for (int i = 0; i < n; ++i) {
    current_arm[i] = static_cast<int>(
        init_rng.below(static_cast<uint32_t>(n_arms)));
  }

  std::vector<std::unique_ptr<Policy>> policies;
  std::vector<Rng> policy_rng;
  policies.reserve(n);
  policy_rng.reserve(n);
  for (int i = 0; i < n; ++i) {
    policies.push_back(factory ? factory(i, n_arms, current_arm[i])
                               : make_policy(params.policy, n_arms,
                                             params.policy_params,
                                             current_arm[i]));
    policy_rng.emplace_back(
        derive_seed(seed, streams::kPolicyBase + static_cast<uint64_t>(i)));
  }

  std::vector<bool> was_active(n, false);
  std::vector<bool> has_selected(n, false);
  std::vector<std::vector<double>> pending(n);  // rewards since last turn
  std::deque<int> rotation;                     // sequential turn order

  RunResult result;
  result.params = params;
  result.seed = seed;
  result.records.reserve(static_cast<size_t>(params.iterations) * n);

  std::vector<WnAction> profile(n);
  for (int iteration = 1; iteration <= params.iterations; ++iteration) {
    for (int i = 0; i < n; ++i) {
      const bool active = iteration >= deployment.wns[i].activation_iteration;
      if (active && !was_active[i]) {
        was_active[i] = true;
        if (params.mode == RunMode::sequential) {
          rotation.push_back(i);  // ids ascend within one iteration's joiners
        }
      }
    }

    if (params.mode == RunMode::concurrent) {
      for (int i = 0; i < n; ++i) {
        if (was_active[i]) {
          current_arm[i] = policies[i]->select(policy_rng[i]);
          has_selected[i] = true;
        }
      }
    } else if (!rotation.empty()) {
      // Exactly one WN acts: it folds the rewards gathered since its last
      // turn into its policy, then picks the next arm.
      const int turn = rotation.front();
      rotation.pop_front();
      rotation.push_back(turn);
      if (has_selected[turn] && !pending[turn].empty()) {
        policies[turn]->update(current_arm[turn], mean_of(pending[turn]));
      }
      pending[turn].clear();
      current_arm[turn] = policies[turn]->select(policy_rng[turn]);
      has_selected[turn] = true;
    }

    for (int i = 0; i < n; ++i) {
      profile[i] = {arms.arm(current_arm[i]), was_active[i]};
    }
    const std::vector<StepResult> step =
        step_throughputs(profile, budget, params.radio, arms,
                         params.reward_ref);

    if (params.mode == RunMode::concurrent) {
      // All updates see rewards computed from the same frozen joint profile.
      for (int i = 0; i < n; ++i) {
        if (was_active[i]) {
          policies[i]->update(current_arm[i], step[i].reward);
        }
      }
    } else {
      for (int i = 0; i < n; ++i) {
        if (was_active[i]) {
          pending[i].push_back(step[i].reward);
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      result.records.push_back({iteration, i, profile[i].arm, was_active[i],
                                step[i].throughput_mbps, step[i].reward});
    }
  }

  result.final_policy_states.reserve(n);
  for (const auto& policy : policies) {
    result.final_policy_states.push_back(policy->snapshot());
  }
  return result;
}

}  // namespace srsim
