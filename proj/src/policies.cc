#include "srsim/policies.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srsim {

namespace {

// All argmax operations tie-break toward the lowest arm index so traces are
// reproducible.
int argmax_lowest(const std::vector<double>& values) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(values.size()); ++k) {
    if (values[k] > values[best]) {
      best = k;
    }
  }
  return best;
}

// Exploitation ranks arms by the reward of their most recent play; stale
// values persist for unplayed arms. The last-value estimate, not a running
// mean, is what makes the policy react to the absolute experienced reward.
// Running means are still tracked as an observable statistic.
class EgreedyPolicy final : public Policy {
 public:
  EgreedyPolicy(int num_arms, const PolicyParams& params)
      : Policy(num_arms),
        eps0_(params.eps0),
        last_reward_(num_arms, 0.0),
        sums_(num_arms, 0.0),
        counts_(num_arms, 0) {}

  int select(Rng& rng) override {
    const int t = decisions_ + 1;
    const double eps = eps0_ / std::sqrt(static_cast<double>(t));
    ++decisions_;
    if (rng.uniform01() < eps) {
      return static_cast<int>(rng.below(static_cast<uint32_t>(num_arms_)));
    }
    return argmax_lowest(last_reward_);
  }

  void update(int arm, double reward) override {
    last_reward_[arm] = reward;
    sums_[arm] += reward;
    ++counts_[arm];
  }

  PolicyKind kind() const override { return PolicyKind::egreedy; }

  nlohmann::json snapshot() const override {
    return {{"kind", "egreedy"},   {"num_arms", num_arms_},
            {"eps0", eps0_},       {"decisions", decisions_},
            {"last", last_reward_}, {"sums", sums_},
            {"counts", counts_}};
  }

  void restore(const nlohmann::json& j) {
    decisions_ = j.at("decisions").get<long>();
    last_reward_ = j.at("last").get<std::vector<double>>();
    sums_ = j.at("sums").get<std::vector<double>>();
    counts_ = j.at("counts").get<std::vector<long>>();
  }

 private:
  double eps0_;
  long decisions_ = 0;  // 1-based decision clock: eps_t = eps0 / sqrt(t)
  std::vector<double> last_reward_;
  std::vector<double> sums_;
  std::vector<long> counts_;
};

// Weights are kept as cumulative importance-weighted reward sums S_k; the
// weight after u completed rounds is w_k = exp(eta_u * S_k) with
// eta_u = eta0 / sqrt(u). This equals the recursion
// w <- w^(eta_t/eta_{t-1}) * exp(eta_t * rhat), evaluated in the log domain
// so that large rhat = r/p cannot overflow.
class Exp3Policy final : public Policy {
 public:
  Exp3Policy(int num_arms, const PolicyParams& params)
      : Policy(num_arms),
        eta0_(params.eta0),
        gamma_(params.gamma),
        divide_by_k_(params.exp3_divide_by_k),
        sums_(num_arms, 0.0) {}

  std::vector<double> probabilities() const {
    const double eta =
        rounds_ == 0 ? eta0_ : eta0_ / std::sqrt(static_cast<double>(rounds_));
    std::vector<double> logw(num_arms_);
    for (int k = 0; k < num_arms_; ++k) {
      logw[k] = eta * sums_[k];
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    std::vector<double> p(num_arms_);
    double total = 0.0;
    for (int k = 0; k < num_arms_; ++k) {
      p[k] = std::exp(logw[k] - top);
      total += p[k];
    }
    for (int k = 0; k < num_arms_; ++k) {
      p[k] = (1.0 - gamma_) * p[k] / total + gamma_ / num_arms_;
    }
    return p;
  }

  int select(Rng& rng) override {
    const std::vector<double> p = probabilities();
    const double u = rng.uniform01();
    double cumulative = 0.0;
    int arm = -1;
    int last_positive = 0;
    for (int k = 0; k < num_arms_; ++k) {
      if (p[k] > 0.0) {
        last_positive = k;
      }
      cumulative += p[k];
      if (u < cumulative) {
        arm = k;
        break;
      }
    }
    if (arm < 0 || p[arm] <= 0.0) {
      // Cumulative rounding left u past the sum; fall back to an arm that
      // can legitimately be importance-weighted.
      arm = last_positive;
    }
    last_arm_ = arm;
    last_p_ = p[arm];
    return arm;
  }

  void update(int arm, double reward) override {
    if (arm != last_arm_) {
      throw std::logic_error("exp3: update must follow the matching select");
    }
    if (last_p_ <= 0.0) {
      throw std::logic_error("exp3: selected-arm probability must be > 0");
    }
    const double rhat = reward / last_p_;
    sums_[arm] += divide_by_k_ ? rhat / num_arms_ : rhat;
    ++rounds_;
  }

  PolicyKind kind() const override { return PolicyKind::exp3; }

  nlohmann::json snapshot() const override {
    return {{"kind", "exp3"},     {"num_arms", num_arms_},
            {"eta0", eta0_},      {"gamma", gamma_},
            {"divide_by_k", divide_by_k_}, {"rounds", rounds_},
            {"sums", sums_},      {"last_arm", last_arm_},
            {"last_p", last_p_}};
  }

  void restore(const nlohmann::json& j) {
    rounds_ = j.at("rounds").get<long>();
    sums_ = j.at("sums").get<std::vector<double>>();
    last_arm_ = j.at("last_arm").get<int>();
    last_p_ = j.at("last_p").get<double>();
  }

 private:
  double eta0_;
  double gamma_;
  bool divide_by_k_;
  long rounds_ = 0;  // completed select/update rounds
  std::vector<double> sums_;
  int last_arm_ = -1;
  double last_p_ = -1.0;
};

class UcbPolicy final : public Policy {
 public:
  UcbPolicy(int num_arms, const PolicyParams& params)
      : Policy(num_arms),
        t_floor_(params.ucb_index_t_floor),
        sums_(num_arms, 0.0),
        counts_(num_arms, 0) {}

  int select(Rng&) override {
    // Initialization: play each arm once, in index order.
    for (int k = 0; k < num_arms_; ++k) {
      if (counts_[k] == 0) {
        return k;
      }
    }
    // t counts post-initialization decisions, starting at 1.
    const long t = std::max<long>(decisions_ + 1, t_floor_);
    std::vector<double> index(num_arms_);
    for (int k = 0; k < num_arms_; ++k) {
      index[k] = ucb_index(sums_[k] / static_cast<double>(counts_[k]),
                           counts_[k], t);
    }
    ++decisions_;
    return argmax_lowest(index);
  }

  void update(int arm, double reward) override {
    sums_[arm] += reward;
    ++counts_[arm];
  }

  PolicyKind kind() const override { return PolicyKind::ucb; }

  nlohmann::json snapshot() const override {
    return {{"kind", "ucb"},       {"num_arms", num_arms_},
            {"t_floor", t_floor_}, {"decisions", decisions_},
            {"sums", sums_},       {"counts", counts_}};
  }

  void restore(const nlohmann::json& j) {
    decisions_ = j.at("decisions").get<long>();
    sums_ = j.at("sums").get<std::vector<double>>();
    counts_ = j.at("counts").get<std::vector<long>>();
  }

 private:
  int t_floor_;
  long decisions_ = 0;  // post-initialization decisions
  std::vector<double> sums_;
  std::vector<long> counts_;
};

class ThompsonPolicy final : public Policy {
 public:
  explicit ThompsonPolicy(int num_arms)
      : Policy(num_arms), rhat_(num_arms, 0.0), counts_(num_arms, 0) {}

  int select(Rng& rng) override {
    std::vector<double> theta(num_arms_);
    for (int k = 0; k < num_arms_; ++k) {
      const double sigma =
          std::sqrt(1.0 / (static_cast<double>(counts_[k]) + 1.0));
      theta[k] = rng.normal(rhat_[k], sigma);
    }
    return argmax_lowest(theta);
  }

  void update(int arm, double reward) override {
    rhat_[arm] = thompson_update_mean(rhat_[arm], counts_[arm], reward);
    ++counts_[arm];
  }

  PolicyKind kind() const override { return PolicyKind::thompson; }

  nlohmann::json snapshot() const override {
    return {{"kind", "thompson"},
            {"num_arms", num_arms_},
            {"rhat", rhat_},
            {"counts", counts_}};
  }

  void restore(const nlohmann::json& j) {
    rhat_ = j.at("rhat").get<std::vector<double>>();
    counts_ = j.at("counts").get<std::vector<long>>();
  }

 private:
  std::vector<double> rhat_;   // posterior mean per arm
  std::vector<long> counts_;   // posterior variance is 1 / (counts + 1)
};

// Non-learning baseline: keeps the uniformly drawn initial configuration,
// modeling default (static) operation.
class StaticArmPolicy final : public Policy {
 public:
  StaticArmPolicy(int num_arms, int arm) : Policy(num_arms), arm_(arm) {}

  int select(Rng&) override { return arm_; }
  void update(int, double) override {}
  PolicyKind kind() const override { return PolicyKind::static_baseline; }

  nlohmann::json snapshot() const override {
    return {{"kind", "static"}, {"num_arms", num_arms_}, {"arm", arm_}};
  }

 private:
  int arm_;
};

}  // namespace

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::egreedy: return "egreedy";
    case PolicyKind::exp3: return "exp3";
    case PolicyKind::ucb: return "ucb";
    case PolicyKind::thompson: return "thompson";
    case PolicyKind::static_baseline: return "static";
  }
  throw std::logic_error("unknown policy kind");
}

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "egreedy") return PolicyKind::egreedy;
  if (name == "exp3") return PolicyKind::exp3;
  if (name == "ucb") return PolicyKind::ucb;
  if (name == "thompson") return PolicyKind::thompson;
  if (name == "static") return PolicyKind::static_baseline;
  throw std::invalid_argument("unknown policy: " + name);
}

std::unique_ptr<Policy> make_policy(PolicyKind kind, int num_arms,
                                    const PolicyParams& params,
                                    int initial_arm) {
  switch (kind) {
    case PolicyKind::egreedy:
      return std::make_unique<EgreedyPolicy>(num_arms, params);
    case PolicyKind::exp3:
      return std::make_unique<Exp3Policy>(num_arms, params);
    case PolicyKind::ucb:
      return std::make_unique<UcbPolicy>(num_arms, params);
    case PolicyKind::thompson:
      return std::make_unique<ThompsonPolicy>(num_arms);
    case PolicyKind::static_baseline:
      return std::make_unique<StaticArmPolicy>(num_arms, initial_arm);
  }
  throw std::logic_error("unknown policy kind");
}

std::unique_ptr<Policy> policy_from_snapshot(const nlohmann::json& snapshot) {
  const auto kind = policy_kind_from_string(snapshot.at("kind"));
  const int num_arms = snapshot.at("num_arms").get<int>();
  PolicyParams params;
  switch (kind) {
    case PolicyKind::egreedy: {
      params.eps0 = snapshot.at("eps0").get<double>();
      auto p = std::make_unique<EgreedyPolicy>(num_arms, params);
      p->restore(snapshot);
      return p;
    }
    case PolicyKind::exp3: {
      params.eta0 = snapshot.at("eta0").get<double>();
      params.gamma = snapshot.at("gamma").get<double>();
      params.exp3_divide_by_k = snapshot.at("divide_by_k").get<bool>();
      auto p = std::make_unique<Exp3Policy>(num_arms, params);
      p->restore(snapshot);
      return p;
    }
    case PolicyKind::ucb: {
      params.ucb_index_t_floor = snapshot.at("t_floor").get<int>();
      auto p = std::make_unique<UcbPolicy>(num_arms, params);
      p->restore(snapshot);
      return p;
    }
    case PolicyKind::thompson: {
      auto p = std::make_unique<ThompsonPolicy>(num_arms);
      p->restore(snapshot);
      return p;
    }
    case PolicyKind::static_baseline:
      return std::make_unique<StaticArmPolicy>(num_arms,
                                               snapshot.at("arm").get<int>());
  }
  throw std::logic_error("unknown policy kind");
}

double ucb_index(double mean_reward, long n, long t) {
  return mean_reward +
         std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                   static_cast<double>(n));
}

double thompson_update_mean(double rhat, long n, double reward) {
  const double nd = static_cast<double>(n);
  return (rhat * nd + reward) / (nd + 2.0);
}

std::vector<double> exp3_probabilities(const Policy& policy) {
  const auto* exp3 = dynamic_cast<const Exp3Policy*>(&policy);
  if (exp3 == nullptr) {
    throw std::invalid_argument("exp3_probabilities: not an EXP3 policy");
  }
  return exp3->probabilities();
}

}  // namespace srsim
