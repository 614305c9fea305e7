// Deterministic random-number utilities shared by the simulator.
//
// Reproducibility contract: every stochastic component draws from an
// mt19937_64 engine seeded through mix_seed(seed, stream).  The stream id
// selects an independent substream (e.g. swarm initialization vs. each
// swarm step), so any stage can be replayed in isolation.  Doubles are
// built from the top 53 bits of the engine output, which makes the drawn
// sequence identical on every conforming platform.

#pragma once

#include <cstdint>
#include <random>

namespace mecsim {

// One round of the splitmix64 generator; bijective finalizer with good
// avalanche, the usual choice for deriving sub-seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derive the seed of substream `stream` from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t hashed = splitmix64_next(s);
  s = hashed ^ (0x9E3779B97F4A7C15ull * (stream + 1));
  return splitmix64_next(s);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1); 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mecsim
