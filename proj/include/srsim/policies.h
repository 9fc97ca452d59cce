#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "srsim/rng.h"

namespace srsim {

enum class PolicyKind { egreedy, exp3, ucb, thompson, static_baseline };

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

// Schedule and variant knobs for the learning policies.
struct PolicyParams {
  double eps0 = 1.0;    // epsilon-greedy: eps_t = eps0 / sqrt(t)
  double eta0 = 0.1;    // EXP3: eta_t = eta0 / sqrt(t)
  double gamma = 0.0;   // EXP3 explicit exploration floor
  bool exp3_divide_by_k = false;  // alternative update exponent eta*rhat/K
  int ucb_index_t_floor = 2;      // t used in the index is max(t, floor)
};

// Uniform select/update interface over K arms. One instance per WN, owned by
// the orchestrator. select() consumes randomness only from the stream passed
// in, so a policy's draws never perturb other WNs.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual int select(Rng& rng) = 0;
  virtual void update(int arm, double reward) = 0;
  virtual PolicyKind kind() const = 0;

  // Serializable state snapshot; restorable via policy_from_snapshot().
  virtual nlohmann::json snapshot() const = 0;

  int num_arms() const { return num_arms_; }

 protected:
  explicit Policy(int num_arms) : num_arms_(num_arms) {}
  int num_arms_;
};

// initial_arm seeds the non-learning fixed policy (the uniformly drawn
// default-configuration baseline); learning policies ignore it.
std::unique_ptr<Policy> make_policy(PolicyKind kind, int num_arms,
                                    const PolicyParams& params,
                                    int initial_arm);

std::unique_ptr<Policy> policy_from_snapshot(const nlohmann::json& snapshot);

// UCB selection index: mean + sqrt(2 ln(t) / n).
double ucb_index(double mean_reward, long n, long t);

// Thompson posterior-mean recursion: (rhat * n + reward) / (n + 2).
double thompson_update_mean(double rhat, long n, double reward);

// Current EXP3 sampling distribution (throws for other policy kinds).
std::vector<double> exp3_probabilities(const Policy& policy);

}  // namespace srsim
