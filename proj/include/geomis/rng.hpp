#pragma once

#include <cstdint>
#include <random>

namespace geomis {

/// Per-trial seed: splitmix64 finaliser applied to base + golden * (index + 1).
///
/// The pre-image is injective in `index` (the golden-ratio constant is odd)
/// and the finaliser is a bijection, so distinct indices never collide.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t trial_index);

/// mt19937_64 with platform-independent real draws.
///
/// std::uniform_real_distribution is implementation-defined; this uses the
/// top 53 bits of each draw so results are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n >= 1. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (engine_() >> 63) != 0; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace geomis
