#pragma once

#include <cstdint>
#include <random>

namespace caal {

// Seeded generator with distribution helpers whose results do not depend on
// the standard library implementation (std::*_distribution are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // Number of failures before the first success, success probability q in (0, 1].
  std::uint64_t geometric(double q) {
    std::uint64_t k = 0;
    while (!chance(q)) ++k;
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; derives independent stream seeds from one run seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace caal
