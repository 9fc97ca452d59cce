#include "srsim/scenario.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace srsim {

double distance_m(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace {

bool inside_box(const Vec3& p, const Vec3& box) {
  return p[0] >= 0.0 && p[0] <= box[0] && p[1] >= 0.0 && p[1] <= box[1] &&
         p[2] >= 0.0 && p[2] <= box[2];
}

void check_placement(const WnPlacement& wn, const ScenarioConfig& config) {
  if (!inside_box(wn.ap_position, config.map_size_m) ||
      !inside_box(wn.sta_position, config.map_size_m)) {
    throw std::invalid_argument("WN " + std::to_string(wn.wn_id) +
                                " placed outside the map box");
  }
  const double d = distance_m(wn.ap_position, wn.sta_position);
  if (std::fabs(d - config.ap_sta_distance_m) > 1e-9) {
    throw std::invalid_argument("WN " + std::to_string(wn.wn_id) +
                                " AP-STA distance off by more than 1e-9");
  }
}

}  // namespace

void draw_channel_randomness(Deployment& deployment,
                             const ScenarioConfig& config, Rng& rng) {
  const int n = deployment.size();
  deployment.shadow_db.assign(n, std::vector<double>(n, 0.0));
  deployment.obstacle_db.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      deployment.shadow_db[i][j] =
          rng.normal(config.shadow_mean_db, config.shadow_std_db);
      deployment.obstacle_db[i][j] =
          rng.uniform(config.obstacle_min_db, config.obstacle_max_db);
    }
  }
}

Deployment build_grid(const ScenarioConfig& config, int n_wns,
                      uint64_t seed) {
  if (n_wns != 4) {
    throw std::invalid_argument("build_grid: grid topology is fixed at 4 WNs");
  }
  Deployment d;
  d.map_size_m = config.map_size_m;
  d.seed = seed;

  const Vec3 center{config.map_size_m[0] / 2.0, config.map_size_m[1] / 2.0,
                    config.map_size_m[2] / 2.0};
  const double step = config.ap_sta_distance_m / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i) {
    WnPlacement wn;
    wn.wn_id = i;
    wn.ap_position = config.grid_ap_positions[i];
    // Push the STA diagonally away from the map center in the x-z plane.
    const double sx = wn.ap_position[0] < center[0] ? -1.0 : 1.0;
    const double sz = wn.ap_position[2] < center[2] ? -1.0 : 1.0;
    wn.sta_position = {wn.ap_position[0] + sx * step, wn.ap_position[1],
                       wn.ap_position[2] + sz * step};
    wn.activation_iteration = 0;
    check_placement(wn, config);
    d.wns.push_back(wn);
  }

  Rng rng(derive_seed(seed, streams::kChannelDraws));
  draw_channel_randomness(d, config, rng);
  return d;
}

Deployment build_random(const ScenarioConfig& config, int n_wns,
                        uint64_t seed) {
  if (n_wns < 1) {
    throw std::invalid_argument("build_random: need at least one WN");
  }
  Deployment d;
  d.map_size_m = config.map_size_m;
  d.seed = seed;

  Rng pos_rng(derive_seed(seed, streams::kDeployment));
  for (int i = 0; i < n_wns; ++i) {
    WnPlacement wn;
    wn.wn_id = i;
    wn.activation_iteration = 0;
    wn.ap_position = {pos_rng.uniform(0.0, config.map_size_m[0]),
                      pos_rng.uniform(0.0, config.map_size_m[1]),
                      pos_rng.uniform(0.0, config.map_size_m[2])};
    // STA at the configured distance, uniform direction, resampled until it
    // lands inside the box.
    bool placed = false;
    for (int attempt = 0; attempt < config.sta_placement_max_retries;
         ++attempt) {
      const double cos_theta = pos_rng.uniform(-1.0, 1.0);
      const double phi = pos_rng.uniform(0.0, 2.0 * M_PI);
      const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
      const Vec3 dir{sin_theta * std::cos(phi), sin_theta * std::sin(phi),
                     cos_theta};
      Vec3 sta{wn.ap_position[0] + config.ap_sta_distance_m * dir[0],
               wn.ap_position[1] + config.ap_sta_distance_m * dir[1],
               wn.ap_position[2] + config.ap_sta_distance_m * dir[2]};
      if (inside_box(sta, config.map_size_m)) {
        wn.sta_position = sta;
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::runtime_error(
          "build_random: STA placement exceeded retry budget (map too small "
          "for the configured AP-STA distance)");
    }
    check_placement(wn, config);
    d.wns.push_back(wn);
  }

  Rng draw_rng(derive_seed(seed, streams::kChannelDraws));
  draw_channel_randomness(d, config, draw_rng);
  return d;
}

Deployment build_dynamic(const ScenarioConfig& config, int n_wns,
                         uint64_t seed) {
  if (config.activation_iterations.size() != 4) {
    throw std::invalid_argument(
        "build_dynamic: grid topology needs exactly 4 activation entries");
  }
  Deployment d = build_grid(config, n_wns, seed);
  for (int i = 0; i < 4; ++i) {
    const int activation = config.activation_iterations[i];
    if (activation < 0 || activation > config.total_iterations) {
      throw std::invalid_argument(
          "build_dynamic: activation iteration outside [0, iterations]");
    }
    d.wns[i].activation_iteration = activation;
  }
  return d;
}

}  // namespace srsim
