#pragma once

#include <cstdint>

namespace sta {

/// 64-bit linear congruential generator (Knuth MMIX constants):
///   state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
/// uniform() takes the top 53 bits of the new state.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  /// (k + 0.5) / 2^53 for the top 53 bits k: strictly inside (0, 1).
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  /// Strictly inside (lo, hi) for hi - lo well above rounding.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace sta
