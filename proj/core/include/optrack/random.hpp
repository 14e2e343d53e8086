#pragma once

#include <cstdint>

#include "optrack/environment.hpp"

namespace optrack {

// splitmix64 finalizer. Used both to expand seeds and as the mixing step of
// the per-replication seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256++ seeded through splitmix64. All distribution draws are derived
// from the raw 64-bit output directly, so sequences are reproducible across
// platforms and standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9E3779B97F4A7C15ULL;
      word = mix64(sm);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// One outcome draw for `action` from the environment. Identical stream
// positions always yield identical draws.
inline double sample_outcome(const Environment& env, int action,
                             RandomStream& rng) {
  switch (env.family) {
    case OutcomeFamily::Bernoulli:
      return rng.bernoulli(env.mean(action)) ? 1.0 : 0.0;
  }
  throw std::domain_error("sample_outcome: unknown outcome family");
}

}  // namespace optrack
