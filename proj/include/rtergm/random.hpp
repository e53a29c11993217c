#pragma once

#include <cstdint>
#include <random>

namespace rtergm {

/// mt19937_64 with portable uniform draws. std::uniform_*_distribution output is
/// implementation-defined, so the draws are derived from raw engine bits here to keep
/// sample sequences identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (one of the pair is discarded).
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Deterministic child seed (splitmix64 of master and stream index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace rtergm
