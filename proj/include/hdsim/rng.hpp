#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hdsim {

/// Deterministic random source. All simulation randomness flows through this
/// class so that a run is reproducible from its seed alone. Draws are made
/// explicit (no std::*_distribution, whose output differs across standard
/// library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1). One raw draw.
  double uniform01() {
    ++draws_;
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [0, hi). One raw draw.
  double uniform_below(double hi) { return uniform01() * hi; }

  /// Uniform integer in [0, n). Rejection-sampled, so it may consume more
  /// than one raw draw (astronomically rarely for small n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t bound = n == 0 ? 0 : (0 - n) % n;  // 2^64 mod n
    for (;;) {
      ++draws_;
      const std::uint64_t x = gen_();
      if (x >= bound) return x % n;
    }
  }

  /// True with probability p. One raw draw.
  bool bernoulli(double p) { return uniform01() < p; }

  /// Raw draws consumed so far (used by tests that pin draw counts).
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 gen_;
  std::uint64_t draws_ = 0;
};

/// SplitMix64 finalizer; the building block of the seed-derivation scheme.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// FNV-1a over a string; stable across platforms.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Per-run seed for (master seed, grid-cell key, iteration). The cell key is
/// a canonical string of the cell's swept parameter values, so adding or
/// reordering grid cells never perturbs the streams of existing cells.
constexpr std::uint64_t derive_run_seed(std::uint64_t master, std::string_view cell_key,
                                        std::uint64_t iteration) {
  return splitmix64(splitmix64(master ^ splitmix64(fnv1a64(cell_key))) + iteration);
}

}  // namespace hdsim
