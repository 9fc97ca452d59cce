#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "srsim/rng.h"

namespace srsim {

using Vec3 = std::array<double, 3>;

double distance_m(const Vec3& a, const Vec3& b);

// Geometry and randomness knobs for deployment construction.
struct ScenarioConfig {
  Vec3 map_size_m{10.0, 5.0, 10.0};
  double ap_sta_distance_m = std::sqrt(2.0);

  // Static per-link channel terms, drawn once per deployment.
  double shadow_mean_db = 9.5;
  double shadow_std_db = 2.5;
  double obstacle_min_db = 10.0;
  double obstacle_max_db = 50.0;

  // Grid topology: four APs on a centered rectangle at half map height, each
  // STA pushed diagonally outward so it sits as far as possible from the
  // other networks.
  std::array<Vec3, 4> grid_ap_positions{
      Vec3{3.0, 2.5, 3.0}, Vec3{7.0, 2.5, 3.0},
      Vec3{3.0, 2.5, 7.0}, Vec3{7.0, 2.5, 7.0}};

  // Activation schedule for the dynamic scenario (iteration at which each WN
  // turns on; 0 = active from the start).
  std::vector<int> activation_iterations{0, 0, 2500, 5000};
  int total_iterations = 10000;  // bound for activation validation

  int sta_placement_max_retries = 1000;
};

// One AP->STA pair acting as a single learning agent.
struct WnPlacement {
  int wn_id = 0;
  Vec3 ap_position{};
  Vec3 sta_position{};
  int activation_iteration = 0;  // 0 = active from the start
};

// Full geometry plus the per-link random channel terms. Reconstructible
// bit-for-bit from (config, seed).
struct Deployment {
  Vec3 map_size_m{};
  std::vector<WnPlacement> wns;
  // Per ordered link (i, j), i != j: shadowing and obstacle losses in dB.
  // Diagonal entries are zero and unused; the own AP->STA link is modeled
  // without shadowing so the isolation throughput is fixed by geometry.
  std::vector<std::vector<double>> shadow_db;
  std::vector<std::vector<double>> obstacle_db;
  uint64_t seed = 0;

  int size() const { return static_cast<int>(wns.size()); }
};

// 4-WN symmetric grid on the 10x5x10 map. Rejects n_wns != 4.
Deployment build_grid(const ScenarioConfig& config, int n_wns, uint64_t seed);

// APs i.i.d. uniform in the map box; each STA at the configured distance in
// a uniformly random direction, resampled until it falls inside the box.
Deployment build_random(const ScenarioConfig& config, int n_wns,
                        uint64_t seed);

// Grid geometry with the configured activation schedule.
Deployment build_dynamic(const ScenarioConfig& config, int n_wns,
                         uint64_t seed);

// Draws the static per-link channel terms into deployment.shadow_db /
// obstacle_db. Called by the builders; exposed for tests.
void draw_channel_randomness(Deployment& deployment,
                             const ScenarioConfig& config, Rng& rng);

}  // namespace srsim
