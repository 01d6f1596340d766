#pragma once

#include <cstdint>
#include <random>

namespace matint {

/// 64-bit finalizing mix (splitmix64 style); spreads seed/index pairs into
/// well separated engine seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic random stream. Wraps a Mersenne Twister and satisfies
/// UniformRandomBitGenerator, so <random> distributions draw from it directly.
/// The library owns no global randomness: every sampling operation takes one
/// of these explicitly. Same seed + same parameters -> identical realization.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Independent stream for realization `index` of a run with base `seed`.
  /// Streams are derived statelessly so parallel workers can jump anywhere.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace matint
