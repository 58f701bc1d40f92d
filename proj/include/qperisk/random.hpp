#pragma once

#include <cstdint>

namespace qperisk {

/// Counter-based generator: output i of stream `seed` is splitmix64(seed, i).
/// The stream is a pure function of (seed, counter), so it is identical on
/// every platform and shards can use disjoint seeds.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next_u64() noexcept { return mix(seed_ * 0x9E3779B97F4A7C15ULL + (++counter_) * 0xD1B54A32D192ED03ULL); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace qperisk
