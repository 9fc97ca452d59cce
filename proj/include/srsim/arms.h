#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace srsim {

// One bandit action: a (frequency channel, transmit power) configuration.
struct Arm {
  int channel = 0;          // [0, n_channels)
  double tx_power_dbm = 0;  // one of the configured power values

  friend bool operator==(const Arm& a, const Arm& b) {
    return a.channel == b.channel && a.tx_power_dbm == b.tx_power_dbm;
  }
};

// The K = channels x powers action set with the fixed index mapping
// k = channel * n_powers + power_index. The mapping is part of the trace
// schema, so it must not change.
class ArmSpace {
 public:
  ArmSpace(int n_channels, std::vector<double> tx_powers_dbm)
      : n_channels_(n_channels), powers_(std::move(tx_powers_dbm)) {
    if (n_channels_ < 1 || powers_.empty()) {
      throw std::invalid_argument("arm space needs >=1 channel and >=1 power");
    }
  }

  int size() const { return n_channels_ * static_cast<int>(powers_.size()); }
  int n_channels() const { return n_channels_; }
  const std::vector<double>& powers() const { return powers_; }

  Arm arm(int index) const {
    const int np = static_cast<int>(powers_.size());
    if (index < 0 || index >= size()) {
      throw std::out_of_range("arm index out of range");
    }
    return Arm{index / np, powers_[index % np]};
  }

  int index_of(int channel, int power_index) const {
    return channel * static_cast<int>(powers_.size()) + power_index;
  }

  // Inverse of arm(); the power must be one of the configured values.
  int index_of_arm(const Arm& a) const {
    for (int p = 0; p < static_cast<int>(powers_.size()); ++p) {
      if (powers_[p] == a.tx_power_dbm) {
        return index_of(a.channel, p);
      }
    }
    throw std::invalid_argument("arm power not in the configured power set");
  }

  double max_power_dbm() const {
    return *std::max_element(powers_.begin(), powers_.end());
  }

  friend bool operator==(const ArmSpace& a, const ArmSpace& b) {
    return a.n_channels_ == b.n_channels_ && a.powers_ == b.powers_;
  }

 private:
  int n_channels_;
  std::vector<double> powers_;
};

}  // namespace srsim
