#include "srsim/link_budget.h"

#include <cmath>

namespace srsim {

LinkBudget::LinkBudget(const Deployment& deployment,
                       const RadioParams& params) {
  const int n = deployment.size();
  gain_db_.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = distance_m(deployment.wns[i].ap_position,
                                  deployment.wns[j].sta_position);
      gain_db_[i][j] = path_loss_db(d, deployment.shadow_db[i][j],
                                    deployment.obstacle_db[i][j], params);
    }
  }
}

double interference_dbm(int victim, const std::vector<WnAction>& profile,
                        const LinkBudget& budget, const RadioParams& params) {
  double total_mw = 0.0;
  for (int j = 0; j < static_cast<int>(profile.size()); ++j) {
    if (j == victim || !profile[j].active) {
      continue;
    }
    const int separation =
        std::abs(profile[j].arm.channel - profile[victim].arm.channel);
    const double rx_dbm =
        received_power_dbm(profile[j].arm.tx_power_dbm,
                           budget.loss_db(j, victim)) -
        params.leakage_db_per_channel * separation;
    total_mw += mw_from_dbm(rx_dbm);
  }
  return dbm_from_mw(total_mw);
}

double isolation_throughput_mbps(int wn, double tx_dbm,
                                 const LinkBudget& budget,
                                 const RadioParams& params) {
  const double p_rx = received_power_dbm(tx_dbm, budget.loss_db(wn, wn));
  const double snr = sinr_linear(p_rx, kNoPowerDbm, params.noise_dbm);
  return throughput_mbps(snr, params.bandwidth_mhz);
}

}  // namespace srsim
