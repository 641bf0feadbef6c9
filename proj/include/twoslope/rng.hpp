#pragma once

#include <cstdint>

namespace twoslope {

/// Counter-based SplitMix64: draw(i) = mix(seed + (i + 1) * golden_gamma).
/// Any draw can be reproduced from (seed, counter) alone, which keeps
/// randomized runs identical regardless of how work is split across threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t counter = 0) noexcept
      : seed_(seed), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) noexcept {
    return mix(seed + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }

  std::uint64_t next() noexcept { return at(seed_, counter_++); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Sub-stream for task `index`; independent of the parent's counter.
  SplitMix64 fork(std::uint64_t index) const noexcept { return SplitMix64(mix(seed_ ^ mix(index + 0x632be59bd9b4e019ULL))); }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace twoslope
