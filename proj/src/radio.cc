#include "srsim/radio.h"

#include <cmath>
#include <stdexcept>

namespace srsim {

double mw_from_dbm(double dbm) {
  if (dbm == kNoPowerDbm) {
    return 0.0;
  }
  return std::pow(10.0, dbm / 10.0);
}

double dbm_from_mw(double mw) {
  if (mw <= 0.0) {
    return kNoPowerDbm;
  }
  return 10.0 * std::log10(mw);
}

double path_loss_db(double d_m, double g_s_db, double g_o_db,
                    const RadioParams& params) {
  if (d_m <= 0.0) {
    throw std::domain_error("path_loss_db: distance must be positive");
  }
  return params.pl0_db + 10.0 * params.alpha * std::log10(d_m) + g_s_db +
         (d_m / params.d_obs_m) * g_o_db;
}

double received_power_dbm(double tx_dbm, double loss_db) {
  return tx_dbm - loss_db;
}

double sinr_linear(double p_rx_dbm, double i_dbm, double noise_dbm) {
  return mw_from_dbm(p_rx_dbm) / (mw_from_dbm(i_dbm) + mw_from_dbm(noise_dbm));
}

double throughput_mbps(double sinr, double bandwidth_mhz) {
  return bandwidth_mhz * std::log2(1.0 + sinr);
}

double reward(double tpt_mbps, double optimal_mbps) {
  if (optimal_mbps <= 0.0) {
    throw std::domain_error("reward: optimal throughput must be positive");
  }
  return tpt_mbps / optimal_mbps;
}

}  // namespace srsim
