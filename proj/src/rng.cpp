#include "geomis/rng.hpp"

#include "geomis/errors.hpp"

namespace geomis {

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
  std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ULL * (trial_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw UsageError("Rng::below needs n >= 1");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

}  // namespace geomis
