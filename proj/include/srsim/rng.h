#pragma once

#include <array>
#include <cstdint>

namespace srsim {

// SplitMix64 avalanche step. Used for seeding and stream derivation.
uint64_t mix64(uint64_t x);

// Deterministic sub-seed for a named stream of a root seed. Streams derived
// from the same root with different ids are independent for simulation
// purposes; the mapping is fixed so traces reproduce across platforms.
uint64_t derive_seed(uint64_t root_seed, uint64_t stream_id);

// Stream ids used across the simulator. Keeping geometry, initial-arm and
// per-policy streams separate means changing the policy cannot perturb the
// deployment draws.
namespace streams {
inline constexpr uint64_t kDeployment = 1;
inline constexpr uint64_t kChannelDraws = 2;
inline constexpr uint64_t kInitialArms = 3;
inline constexpr uint64_t kPolicyBase = 1000;           // + wn_id
inline constexpr uint64_t kRepetitionBase = 1u << 20;   // + repetition index
}  // namespace streams

// xoshiro256** with explicit double generation. std::mt19937_64 itself is
// portable but the standard library distributions are not specified
// bit-exactly, so uniform and normal draws are implemented here.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  double uniform01();                         // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);       // [lo, hi)
  double normal(double mean, double stddev);  // Box-Muller, two draws per call
  uint32_t below(uint32_t n);                 // unbiased integer in [0, n)

 private:
  std::array<uint64_t, 4> state_;
};

}  // namespace srsim
