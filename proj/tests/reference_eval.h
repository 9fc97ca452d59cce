#pragma once

// Independent straight-line reimplementation of the per-iteration throughput
// and reward computation, used as a cross-check oracle. Deliberately avoids
// LinkBudget / interference_dbm / step_throughputs: everything is recomputed
// from the deployment geometry with local formulas.

#include <cmath>
#include <vector>

#include "srsim/link_budget.h"
#include "srsim/orchestrator.h"
#include "srsim/scenario.h"

namespace refeval {

struct WnOutcome {
  double sinr = 0.0;
  double throughput_mbps = 0.0;
  double reward = 0.0;
};

inline double loss_between(const srsim::Deployment& d, int from, int to,
                           const srsim::RadioParams& rp) {
  const auto& a = d.wns[from].ap_position;
  const auto& b = d.wns[to].sta_position;
  const double dist = std::sqrt((a[0] - b[0]) * (a[0] - b[0]) +
                                (a[1] - b[1]) * (a[1] - b[1]) +
                                (a[2] - b[2]) * (a[2] - b[2]));
  return rp.pl0_db + 10.0 * rp.alpha * std::log(dist) / std::log(10.0) +
         d.shadow_db[from][to] + dist / rp.d_obs_m * d.obstacle_db[from][to];
}

inline std::vector<WnOutcome> evaluate(
    const srsim::Deployment& d, const std::vector<srsim::WnAction>& profile,
    const srsim::RadioParams& rp, double reference_tx_dbm_or_negative) {
  const int n = d.size();
  std::vector<WnOutcome> out(n);
  for (int i = 0; i < n; ++i) {
    if (!profile[i].active) {
      continue;
    }
    const double signal_mw = std::pow(
        10.0,
        (profile[i].arm.tx_power_dbm - loss_between(d, i, i, rp)) / 10.0);
    double interference_mw = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i || !profile[j].active) {
        continue;
      }
      const int sep = profile[j].arm.channel >= profile[i].arm.channel
                          ? profile[j].arm.channel - profile[i].arm.channel
                          : profile[i].arm.channel - profile[j].arm.channel;
      interference_mw +=
          std::pow(10.0, (profile[j].arm.tx_power_dbm -
                          loss_between(d, j, i, rp) -
                          rp.leakage_db_per_channel * sep) /
                             10.0);
    }
    const double noise_mw = std::pow(10.0, rp.noise_dbm / 10.0);
    out[i].sinr = signal_mw / (interference_mw + noise_mw);
    out[i].throughput_mbps =
        rp.bandwidth_mhz * std::log2(1.0 + out[i].sinr);
    const double ref_tx = reference_tx_dbm_or_negative > -1000.0
                              ? reference_tx_dbm_or_negative
                              : profile[i].arm.tx_power_dbm;
    const double snr_mw =
        std::pow(10.0, (ref_tx - loss_between(d, i, i, rp)) / 10.0) / noise_mw;
    out[i].reward =
        out[i].throughput_mbps / (rp.bandwidth_mhz * std::log2(1.0 + snr_mw));
  }
  return out;
}

}  // namespace refeval
