// Counter-based random streams built on the SplitMix64 output function.
//
// Stream (seed, counter) yields mix(base + k * γ) for k = 1, 2, ..., with
// base = mix(seed) + counter * γ' and γ, γ' fixed odd constants. Any trial
// can be regenerated from (seed, trial index) alone, so partitioned runs
// reproduce serial runs exactly.

#pragma once

#include <cstdint>

namespace qclone {

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t counter) : state_(mix(seed) + counter * kStreamGamma) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamGamma = 0xd1b54a32d192ed03ULL;

  std::uint64_t state_;
};

}  // namespace qclone
