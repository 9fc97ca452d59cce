#pragma once

#include <vector>

#include "srsim/arms.h"
#include "srsim/radio.h"
#include "srsim/scenario.h"

namespace srsim {

// Immutable matrix of total link losses: loss_db(i, j) is the attenuation
// from the AP of WN i to the STA of WN j, including shadowing and obstacle
// terms. Downlink only; interference is always evaluated at the victim STA.
class LinkBudget {
 public:
  LinkBudget(const Deployment& deployment, const RadioParams& params);

  double loss_db(int from_wn, int to_wn) const {
    return gain_db_[from_wn][to_wn];
  }
  int size() const { return static_cast<int>(gain_db_.size()); }

 private:
  std::vector<std::vector<double>> gain_db_;
};

// Joint action profile entry: what a WN is transmitting this iteration.
struct WnAction {
  Arm arm{};
  bool active = false;
};

// Total interference received at the victim's STA, summed in milliwatts over
// all other active WNs, with 20 dB (configurable) attenuation per channel of
// separation. Returns -inf dBm when there is no active interferer.
double interference_dbm(int victim, const std::vector<WnAction>& profile,
                        const LinkBudget& budget, const RadioParams& params);

// Throughput of a WN transmitting alone (I = 0) at the given power.
double isolation_throughput_mbps(int wn, double tx_dbm,
                                 const LinkBudget& budget,
                                 const RadioParams& params);

}  // namespace srsim
