#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "reference_eval.h"
#include "srsim/orchestrator.h"

using namespace srsim;

namespace {

ArmSpace default_arms() { return ArmSpace(3, {-15.0, 0.0, 15.0, 30.0}); }

RunParams params_for(PolicyKind policy, RunMode mode, int iterations) {
  RunParams p;
  p.policy = policy;
  p.mode = mode;
  p.iterations = iterations;
  return p;
}

bool same_records(const RunResult& a, const RunResult& b) {
  if (a.records.size() != b.records.size()) {
    return false;
  }
  for (size_t i = 0; i < a.records.size(); ++i) {
    const IterationRecord& x = a.records[i];
    const IterationRecord& y = b.records[i];
    const bool reward_equal =
        (std::isnan(x.reward) && std::isnan(y.reward)) || x.reward == y.reward;
    if (x.iteration != y.iteration || x.wn_id != y.wn_id ||
        !(x.arm == y.arm) || x.active != y.active ||
        x.throughput_mbps != y.throughput_mbps || !reward_equal) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("an isolated WN earns reward 1 at every iteration, any policy") {
  ScenarioConfig config;
  const Deployment d = build_random(config, 1, 3);
  const ArmSpace arms = default_arms();
  for (PolicyKind kind :
       {PolicyKind::egreedy, PolicyKind::exp3, PolicyKind::ucb,
        PolicyKind::thompson, PolicyKind::static_baseline}) {
    const RunResult result =
        run_simulation(d, arms, params_for(kind, RunMode::concurrent, 200), 3);
    for (const IterationRecord& rec : result.records) {
      REQUIRE(rec.reward == 1.0);
      REQUIRE(rec.throughput_mbps > 0.0);
    }
  }
}

TEST_CASE("fixed seed reproduces the full run") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 11);
  const ArmSpace arms = default_arms();
  const RunParams p = params_for(PolicyKind::thompson, RunMode::concurrent, 2000);
  CHECK(same_records(run_simulation(d, arms, p, 11),
                     run_simulation(d, arms, p, 11)));
}

TEST_CASE("dynamic WNs first transmit exactly at their activation") {
  ScenarioConfig config;
  const Deployment d = build_dynamic(config, 4, 5);
  const ArmSpace arms = default_arms();
  const RunParams p =
      params_for(PolicyKind::thompson, RunMode::concurrent, 6000);
  const RunResult result = run_simulation(d, arms, p, 5);
  std::vector<int> first_active(4, 0);
  for (const IterationRecord& rec : result.records) {
    if (rec.active && first_active[rec.wn_id] == 0) {
      first_active[rec.wn_id] = rec.iteration;
    }
    if (!rec.active) {
      CHECK(rec.throughput_mbps == 0.0);
      CHECK(std::isnan(rec.reward));
    }
  }
  CHECK(first_active[0] == 1);
  CHECK(first_active[1] == 1);
  CHECK(first_active[2] == 2500);
  CHECK(first_active[3] == 5000);
}

TEST_CASE("inactive WNs contribute no interference") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 7);
  const ArmSpace arms = default_arms();
  const RadioParams radio;
  const LinkBudget budget(d, radio);
  // All on the same channel at full power; WNs 2 and 3 off.
  std::vector<WnAction> all_on{{arms.arm(3), true},
                               {arms.arm(3), true},
                               {arms.arm(3), true},
                               {arms.arm(3), true}};
  std::vector<WnAction> two_off{{arms.arm(3), true},
                                {arms.arm(3), true},
                                {arms.arm(3), false},
                                {arms.arm(3), false}};
  const double i_all = interference_dbm(0, all_on, budget, radio);
  const double i_two = interference_dbm(0, two_off, budget, radio);
  CHECK(i_two < i_all);
  // Drop the remaining interferer: sentinel -inf.
  std::vector<WnAction> alone{{arms.arm(3), true},
                              {arms.arm(3), false},
                              {arms.arm(3), false},
                              {arms.arm(3), false}};
  CHECK(interference_dbm(0, alone, budget, radio) == kNoPowerDbm);
}

TEST_CASE("interferer two channels away is attenuated exactly 40 dB") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 13);
  const ArmSpace arms = default_arms();
  const RadioParams radio;
  const LinkBudget budget(d, radio);
  std::vector<WnAction> co{{Arm{0, 30.0}, true}, {Arm{0, 30.0}, true}};
  std::vector<WnAction> far{{Arm{0, 30.0}, true}, {Arm{2, 30.0}, true}};
  // Only WNs 0 and 1 participate.
  const Deployment two{d.map_size_m,
                       {d.wns[0], d.wns[1]},
                       {{0.0, d.shadow_db[0][1]}, {d.shadow_db[1][0], 0.0}},
                       {{0.0, d.obstacle_db[0][1]}, {d.obstacle_db[1][0], 0.0}},
                       d.seed};
  const LinkBudget small(two, radio);
  const double i_co = interference_dbm(0, co, small, radio);
  const double i_far = interference_dbm(0, far, small, radio);
  CHECK(i_co - i_far == doctest::Approx(40.0).epsilon(1e-9));
}

TEST_CASE("distinct channels at high separation give full reward") {
  // Three far-apart WNs on distinct channels: with the leakage attenuated
  // into the noise floor, every reward rounds to exactly 1.
  ScenarioConfig config;
  config.map_size_m = {1000.0, 50.0, 1000.0};
  Deployment d;
  d.map_size_m = config.map_size_m;
  for (int i = 0; i < 3; ++i) {
    WnPlacement wn;
    wn.wn_id = i;
    wn.ap_position = {400.0 * i + 10.0, 25.0, 400.0 * i + 10.0};
    wn.sta_position = {400.0 * i + 11.0, 25.0, 400.0 * i + 11.0};
    d.wns.push_back(wn);
  }
  d.shadow_db.assign(3, std::vector<double>(3, 0.0));
  // Hundreds of meters of obstacles: cross-links are hundreds of dB down,
  // so the adjacent-channel leakage vanishes below the noise floor.
  d.obstacle_db.assign(3, std::vector<double>(3, 30.0));
  for (int i = 0; i < 3; ++i) {
    d.obstacle_db[i][i] = 0.0;
  }
  const ArmSpace arms = default_arms();
  const RadioParams radio;
  const LinkBudget budget(d, radio);
  std::vector<WnAction> profile{{Arm{0, 30.0}, true},
                                {Arm{1, 30.0}, true},
                                {Arm{2, 30.0}, true}};
  for (const StepResult& r :
       step_throughputs(profile, budget, radio, arms, RewardRef::own_arm)) {
    CHECK(r.reward == 1.0);
  }
}

TEST_CASE("co-channel neighbors at full power both lose reward") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 17);
  const ArmSpace arms = default_arms();
  const RadioParams radio;
  const LinkBudget budget(d, radio);
  std::vector<WnAction> profile{{Arm{0, 30.0}, true},
                                {Arm{0, 30.0}, true},
                                {Arm{1, 30.0}, true},
                                {Arm{2, 30.0}, true}};
  const auto step =
      step_throughputs(profile, budget, radio, arms, RewardRef::own_arm);
  CHECK(step[0].reward < 1.0);
  CHECK(step[1].reward < 1.0);
}

TEST_CASE("step results match the independent reference evaluator") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 19);
  const ArmSpace arms = default_arms();
  const RadioParams radio;
  const LinkBudget budget(d, radio);
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<WnAction> profile;
    for (int i = 0; i < 4; ++i) {
      profile.push_back({arms.arm(static_cast<int>(rng.below(arms.size()))),
                         rng.uniform01() < 0.8});
    }
    const auto got =
        step_throughputs(profile, budget, radio, arms, RewardRef::own_arm);
    const auto want = refeval::evaluate(d, profile, radio, -1e9);
    // Trace values are quantized to 6 significant digits; the reference is
    // full precision, so allow half an ulp of the sixth digit.
    for (int i = 0; i < 4; ++i) {
      if (!profile[i].active) {
        CHECK(got[i].throughput_mbps == 0.0);
        continue;
      }
      CHECK(got[i].throughput_mbps ==
            doctest::Approx(want[i].throughput_mbps).epsilon(1e-5));
      CHECK(got[i].reward == doctest::Approx(want[i].reward).epsilon(1e-5));
    }
  }
}

namespace {

// Probe that wraps a real policy and records every (arm, reward) fed back.
class ProbePolicy final : public Policy {
 public:
  ProbePolicy(std::unique_ptr<Policy> inner,
              std::vector<std::pair<int, double>>* log)
      : Policy(inner->num_arms()), inner_(std::move(inner)), log_(log) {}

  int select(Rng& rng) override { return inner_->select(rng); }
  void update(int arm, double reward) override {
    log_->emplace_back(arm, reward);
    inner_->update(arm, reward);
  }
  PolicyKind kind() const override { return inner_->kind(); }
  nlohmann::json snapshot() const override { return inner_->snapshot(); }

 private:
  std::unique_ptr<Policy> inner_;
  std::vector<std::pair<int, double>>* log_;
};

}  // namespace

TEST_CASE("probe policies observe rewards from the frozen joint profile") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 53);
  const ArmSpace arms = default_arms();
  RunParams p = params_for(PolicyKind::thompson, RunMode::concurrent, 200);
  std::vector<std::vector<std::pair<int, double>>> logs(4);
  const RunResult result = run_simulation(
      d, arms, p, 53, [&](int wn, int num_arms, int) {
        return std::make_unique<ProbePolicy>(
            make_policy(PolicyKind::thompson, num_arms, p.policy_params, 0),
            &logs[wn]);
      });
  const LinkBudget budget(d, p.radio);
  for (int w = 0; w < 4; ++w) {
    REQUIRE(logs[w].size() == 200);
    for (int it = 1; it <= 200; ++it) {
      // The reward each policy saw must equal the value recomputed from the
      // logged joint profile of that same iteration: no WN can have updated
      // against a profile where another WN had already moved.
      std::vector<WnAction> profile;
      for (int j = 0; j < 4; ++j) {
        const IterationRecord& rec = result.records[(it - 1) * 4 + j];
        profile.push_back({rec.arm, rec.active});
      }
      const auto step =
          step_throughputs(profile, budget, p.radio, arms, p.reward_ref);
      REQUIRE(logs[w][it - 1].first ==
              arms.index_of_arm(result.records[(it - 1) * 4 + w].arm));
      REQUIRE(logs[w][it - 1].second == step[w].reward);
    }
  }
}

TEST_CASE("adding interferers or power never helps the victim") {
  ScenarioConfig config;
  const ArmSpace arms = default_arms();
  const RadioParams radio;
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const Deployment d = build_random(config, 4, 6100 + trial);
    const LinkBudget budget(d, radio);
    std::vector<WnAction> profile(4);
    for (int i = 0; i < 4; ++i) {
      profile[i] = {arms.arm(static_cast<int>(rng.below(arms.size()))), true};
    }
    profile[1].active = false;
    const double base =
        step_throughput_one(0, profile, budget, radio, arms,
                            RewardRef::own_arm)
            .reward;

    // Switching an interferer on cannot raise the victim's reward.
    auto with_extra = profile;
    with_extra[1].active = true;
    CHECK(step_throughput_one(0, with_extra, budget, radio, arms,
                              RewardRef::own_arm)
              .reward <= base + 1e-12);

    // Raising an active interferer's power cannot raise it either.
    auto louder = profile;
    louder[2].arm.tx_power_dbm = 30.0;
    if (profile[2].arm.tx_power_dbm < 30.0) {
      CHECK(step_throughput_one(0, louder, budget, radio, arms,
                                RewardRef::own_arm)
                .reward <= base + 1e-12);
    }

    // Moving an interferer one channel further away never hurts.
    auto farther = profile;
    const int sep = std::abs(profile[3].arm.channel - profile[0].arm.channel);
    if (profile[3].arm.channel >= profile[0].arm.channel &&
        farther[3].arm.channel < arms.n_channels() - 1) {
      farther[3].arm.channel += 1;
    } else if (farther[3].arm.channel > 0) {
      farther[3].arm.channel -= 1;
    }
    const int new_sep =
        std::abs(farther[3].arm.channel - farther[0].arm.channel);
    if (new_sep > sep) {
      CHECK(step_throughput_one(0, farther, budget, radio, arms,
                                RewardRef::own_arm)
                .throughput_mbps >=
            step_throughput_one(0, profile, budget, radio, arms,
                                RewardRef::own_arm)
                    .throughput_mbps -
                1e-9);
    }
  }
}

TEST_CASE("link budget is recomputable from the deployment") {
  ScenarioConfig config;
  const Deployment d = build_random(config, 5, 71);
  const RadioParams radio;
  const LinkBudget budget(d, radio);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double dist =
          distance_m(d.wns[i].ap_position, d.wns[j].sta_position);
      const double expected = path_loss_db(dist, d.shadow_db[i][j],
                                           d.obstacle_db[i][j], radio);
      CHECK(std::fabs(budget.loss_db(i, j) - expected) < 1e-9);
    }
  }
}

TEST_CASE("all concurrent updates see one frozen joint profile") {
  // Recompute every logged reward offline from the logged joint profile; a
  // mid-iteration arm change would break the equality.
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 23);
  const ArmSpace arms = default_arms();
  const RunParams p = params_for(PolicyKind::egreedy, RunMode::concurrent, 500);
  const RunResult result = run_simulation(d, arms, p, 23);
  const LinkBudget budget(d, p.radio);
  for (int it = 1; it <= p.iterations; ++it) {
    std::vector<WnAction> profile;
    for (int w = 0; w < 4; ++w) {
      const IterationRecord& rec = result.records[(it - 1) * 4 + w];
      profile.push_back({rec.arm, rec.active});
    }
    const auto step =
        step_throughputs(profile, budget, p.radio, arms, p.reward_ref);
    for (int w = 0; w < 4; ++w) {
      const IterationRecord& rec = result.records[(it - 1) * 4 + w];
      REQUIRE(rec.throughput_mbps == step[w].throughput_mbps);
      REQUIRE((std::isnan(rec.reward)
                   ? std::isnan(step[w].reward)
                   : rec.reward == step[w].reward));
    }
  }
}

TEST_CASE("trace is complete and iteration-major") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 29);
  const ArmSpace arms = default_arms();
  const RunParams p = params_for(PolicyKind::ucb, RunMode::sequential, 300);
  const RunResult result = run_simulation(d, arms, p, 29);
  REQUIRE(result.records.size() == 300u * 4u);
  for (int it = 1; it <= 300; ++it) {
    for (int w = 0; w < 4; ++w) {
      const IterationRecord& rec = result.records[(it - 1) * 4 + w];
      CHECK(rec.iteration == it);
      CHECK(rec.wn_id == w);
    }
  }
  CHECK(result.final_policy_states.size() == 4);
}

TEST_CASE("sequential mode changes at most one arm per iteration") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 31);
  const ArmSpace arms = default_arms();
  for (PolicyKind kind : {PolicyKind::thompson, PolicyKind::egreedy}) {
    const RunParams p = params_for(kind, RunMode::sequential, 400);
    const RunResult result = run_simulation(d, arms, p, 31);
    std::vector<Arm> prev(4);
    for (int w = 0; w < 4; ++w) {
      prev[w] = result.records[w].arm;
    }
    for (int it = 2; it <= 400; ++it) {
      int changes = 0;
      int changed_wn = -1;
      for (int w = 0; w < 4; ++w) {
        const Arm arm = result.records[(it - 1) * 4 + w].arm;
        if (!(arm == prev[w])) {
          ++changes;
          changed_wn = w;
        }
        prev[w] = arm;
      }
      REQUIRE(changes <= 1);
      // Round-robin over 4 WNs starting at WN 0 on iteration 1.
      if (changes == 1) {
        REQUIRE(changed_wn == (it - 1) % 4);
      }
    }
  }
}

TEST_CASE("sequential arms hold steady for one full rotation") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 37);
  const ArmSpace arms = default_arms();
  const RunParams p = params_for(PolicyKind::thompson, RunMode::sequential, 401);
  const RunResult result = run_simulation(d, arms, p, 37);
  // WN 2 takes its turns at iterations 3, 7, 11, ...; between consecutive
  // turns its arm is constant for exactly 4 iterations.
  for (int turn = 3; turn + 4 <= 401; turn += 4) {
    const Arm chosen = result.records[(turn - 1) * 4 + 2].arm;
    for (int it = turn; it < turn + 4; ++it) {
      CHECK(result.records[(it - 1) * 4 + 2].arm == chosen);
    }
  }
}

TEST_CASE("a single WN runs identically in both modes") {
  ScenarioConfig config;
  const Deployment d = build_random(config, 1, 41);
  const ArmSpace arms = default_arms();
  for (PolicyKind kind :
       {PolicyKind::egreedy, PolicyKind::exp3, PolicyKind::ucb,
        PolicyKind::thompson, PolicyKind::static_baseline}) {
    const RunResult conc = run_simulation(
        d, arms, params_for(kind, RunMode::concurrent, 150), 41);
    const RunResult seq = run_simulation(
        d, arms, params_for(kind, RunMode::sequential, 150), 41);
    CHECK(same_records(conc, seq));
  }
}

TEST_CASE("static policy keeps the initial uniform arm in both modes") {
  ScenarioConfig config;
  const Deployment d = build_grid(config, 4, 43);
  const ArmSpace arms = default_arms();
  for (RunMode mode : {RunMode::concurrent, RunMode::sequential}) {
    const RunParams p = params_for(PolicyKind::static_baseline, mode, 100);
    const RunResult result = run_simulation(d, arms, p, 43);
    for (int w = 0; w < 4; ++w) {
      const Arm first = result.records[w].arm;
      for (int it = 1; it <= 100; ++it) {
        REQUIRE(result.records[(it - 1) * 4 + w].arm == first);
      }
    }
  }
}

TEST_CASE("newly activated WNs join the sequential rotation") {
  ScenarioConfig config;
  config.activation_iterations = {0, 0, 10, 10};
  const Deployment d = build_dynamic(config, 4, 47);
  const ArmSpace arms = default_arms();
  const RunParams p = params_for(PolicyKind::thompson, RunMode::sequential, 60);
  const RunResult result = run_simulation(d, arms, p, 47);
  // After iteration 10 all four WNs are active; check each gets turns by
  // observing that each WN's arm can change over time.
  std::set<int> turn_takers;
  std::vector<Arm> prev(4);
  for (int w = 0; w < 4; ++w) {
    prev[w] = result.records[w].arm;
  }
  for (int it = 2; it <= 60; ++it) {
    for (int w = 0; w < 4; ++w) {
      const Arm arm = result.records[(it - 1) * 4 + w].arm;
      if (!(arm == prev[w])) {
        turn_takers.insert(w);
      }
      prev[w] = arm;
    }
  }
  // Thompson on a fresh state almost surely moves arms at least once per WN.
  CHECK(turn_takers.size() >= 3);
}
