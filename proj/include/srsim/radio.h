#pragma once

#include <limits>

namespace srsim {

// Physical-layer constants shared by every link computation.
struct RadioParams {
  double pl0_db = 5.0;      // path loss at 1 m
  double alpha = 4.0;       // path-loss exponent
  double d_obs_m = 5.0;     // average distance between two obstacles
  double noise_dbm = -100.0;
  double bandwidth_mhz = 20.0;
  double leakage_db_per_channel = 20.0;  // adjacent-channel attenuation step
};

// dBm value representing zero milliwatts (empty interferer set).
inline constexpr double kNoPowerDbm = -std::numeric_limits<double>::infinity();

double mw_from_dbm(double dbm);  // 10^(dbm/10); -inf maps to 0 mW
double dbm_from_mw(double mw);   // 10*log10(mw); 0 mW maps to -inf

// Log-distance indoor model: PL0 + 10*alpha*log10(d) + G_s + (d/d_obs)*G_o.
// d_m <= 0 is a configuration bug (co-located nodes) and throws.
double path_loss_db(double d_m, double g_s_db, double g_o_db,
                    const RadioParams& params);

double received_power_dbm(double tx_dbm, double loss_db);

// Linear SINR = mW(p_rx) / (mW(i) + mW(noise)).
double sinr_linear(double p_rx_dbm, double i_dbm, double noise_dbm);

// Shannon capacity: B * log2(1 + SINR). Bandwidth in MHz gives Mbps.
double throughput_mbps(double sinr, double bandwidth_mhz);

// Normalized reward = throughput / optimal, in [0, 1]. optimal <= 0 throws.
double reward(double tpt_mbps, double optimal_mbps);

}  // namespace srsim
