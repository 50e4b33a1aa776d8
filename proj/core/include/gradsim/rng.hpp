#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gradsim {

/// Deterministic xoshiro-free splitmix64 stream. Standard-library engines
/// are reproducible but the distributions are not; this generator plus the
/// Box-Muller transform below gives bit-identical Gaussian draws on every
/// platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in (0, 1].
  double uniform() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal deviate via Box-Muller.
  double standard_normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Decorrelated substream seed for (seed, stream index) pairs, so waypoints
/// can be evaluated in parallel with serial-identical results.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
  return mixer.next();
}

}  // namespace gradsim
