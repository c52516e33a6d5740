#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace fuzzyload {

// Seeded pseudo-random source shared by every randomized step.
//
// The engine is MT19937-64 (std::mt19937_64), whose output sequence for a
// given seed is fixed by the C++ standard. All variates are derived from the
// raw 64-bit outputs below instead of <random> distributions, whose
// algorithms differ between standard libraries. Together this makes a seed
// reproduce the same draws on every platform and compiler.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_open_closed() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  // Standard normal via Box-Muller (one draw per call, the sine half is discarded).
  double normal() {
    const double u1 = uniform_open_closed();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fuzzyload
