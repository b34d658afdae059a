#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace coact {

// Deterministic RNG wrapper. All sampling goes through explicit helpers built
// on raw engine output so streams do not depend on library-specific
// distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t below(uint64_t n) {
    // Multiply-shift; bias is negligible for the small ranges used here.
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    return static_cast<uint64_t>(m >> 64);
  }

  // Uniform integer in [lo, hi] inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) { return uniform01() < p; }

  // Index sampled proportionally to non-negative weights. Weights summing to
  // zero fall back to index 0.
  size_t weighted(const std::vector<double>& weights);

  // Stable derivation of a child seed from a parent seed and an index.
  static uint64_t derive(uint64_t seed, uint64_t index);

 private:
  std::mt19937_64 engine_;
};

}  // namespace coact
