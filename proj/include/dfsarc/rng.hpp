#pragma once

#include <cstdint>
#include <random>

#include "dfsarc/rational.hpp"

namespace dfsarc {

// Stream discipline
// -----------------
// Reproducibility contract: every randomized run is a pure function of
// (master seed, stream index). Stream i uses a std::mt19937_64 engine --
// fully specified by the standard, so stable across platforms -- seeded with
// derive_stream_seed(seed, i). Integer draws below avoid std distributions,
// whose output is implementation-defined; the mappings here are part of the
// release contract.

// SplitMix64 mixing step (Steele, Lea, Flood 2014); a bijection on 64-bit
// words with good avalanche behaviour.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ stream;
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t engine_seed) : engine_(engine_seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_stream_seed(seed, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound) by rejection; bound == 1 consumes nothing.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Exact Bernoulli: success with probability num/den. Requires den to fit
  // in 64 bits, which parse_rational-sized parameters always satisfy.
  bool bernoulli(const Rational& p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dfsarc
