#pragma once

#include <cmath>
#include <cstdint>

namespace maxlin {

/// SplitMix64 generator with hashed stream derivation.
///
/// Every parallel consumer (repetition, census attempt, sample point)
/// gets its own stream derived from (seed, tag, index), so results do
/// not depend on the thread schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
    std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ULL);
    s = mix(s ^ (tag + 0xBF58476D1CE4E5B9ULL));
    s = mix(s ^ (index + 0x94D049BB133111EBULL));
    return Rng(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1); safe for log transforms.
  double uniform_open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform integer in [0, n); n must be positive.
  int uniform_int(int n) {
    using u128 = unsigned __int128;
    return static_cast<int>((u128(next_u64()) * u128(n)) >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Marsaglia polar method; one spare is cached per stream.
  double gaussian(double mean = 0.0, double stddev = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + stddev * spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return mean + stddev * u * m;
  }

  /// -log of a Frechet(alpha) draw, i.e. the innovation mapped into the
  /// min-plus domain. Distribution function 1 - exp(-exp(alpha * t)).
  double frechet_minplus(double alpha = 1.0) {
    const double u = uniform_open01();
    return std::log(-std::log(u)) / alpha;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stream tags used across the library so independent draws never collide.
namespace rng_tag {
inline constexpr std::uint64_t kModelEdges = 1;
inline constexpr std::uint64_t kModelPermutation = 2;
inline constexpr std::uint64_t kSamplePoint = 3;
inline constexpr std::uint64_t kAtomJitter = 4;
inline constexpr std::uint64_t kCensusDraw = 5;
inline constexpr std::uint64_t kGreedyCover = 6;
inline constexpr std::uint64_t kSimulationModel = 7;
inline constexpr std::uint64_t kSimulationSample = 8;
}  // namespace rng_tag

}  // namespace maxlin
