#pragma once

#include <cstdint>
#include <random>

namespace tnf {

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for shard `shard` of a run with master seed `master`:
///   splitmix64_mix(master + (shard + 1) * 0x9e3779b97f4a7c15).
/// Shard streams are independent of how many threads execute them.
constexpr std::uint64_t shard_seed(std::uint64_t master, std::uint64_t shard) noexcept {
  return splitmix64_mix(master + (shard + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Portable random source. The engine is std::mt19937_64 and all derived
/// draws are computed here rather than through std:: distributions, whose
/// output is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

private:
  std::mt19937_64 engine_;
};

} // namespace tnf
