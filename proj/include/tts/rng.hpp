#pragma once

#include <cstdint>
#include <random>

namespace tts {

// Seed mixer / stream splitter (Steele et al.'s splitmix64 constants).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// All randomness in the project flows through this wrapper. The engine is
// std::mt19937_64, whose output sequence is fixed by the C++ standard, and
// every transform below is written by hand so that draws are bit-identical
// across platforms (std::uniform_*_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 mixer(seed);
    engine_.seed(mixer.next());
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // True with probability p. p >= 1 always succeeds, p <= 0 always fails.
  bool flip(double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return uniform01() < p;
  }

  // Unbiased integer in [0, n) via rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
      draw = next_u64();
    } while (draw >= limit);
    return draw % n;
  }

  // Derive an independent child stream.
  Rng split() { return Rng(next_u64()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tts
