//===--- rng.hpp - deterministic random streams ---------------------------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// Seeded, replayable randomness. Every stochastic component in the library
// draws from an RngStream owned by exactly one consumer, so a run is fully
// determined by (seed, draw order). Trial seeds are derived with splitmix64
// so that Monte Carlo results do not depend on how trials are batched.
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_RNG_HPP
#define LINLEAK_RNG_HPP

#include <cstdint>
#include <random>

namespace linleak {

// One splitmix64 step. Advances `state` and returns the next output word.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stable mapping (master seed, trial index) -> per-trial seed. Part of the
// reproducibility contract: results must not change when trials are
// re-batched across workers, so each trial owns a seed derived only from
// the master seed and its own index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  return splitmix64_next(state);
}

// A single-owner 64-bit PRNG stream. The raw seed is scrambled through
// splitmix64 before seeding the engine so that small consecutive seeds
// (0, 1, 2, ...) still produce decorrelated streams.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(scramble(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw on the open interval (0, 1): (k + 0.5) * 2^-53 with
  // k in [0, 2^53). Never returns an exact 0, 0.5, or 1, which keeps
  // downstream inverse-CDF transforms free of singular inputs.
  double unit_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

 private:
  static std::uint64_t scramble(std::uint64_t seed) {
    return splitmix64_next(seed);
  }

  std::mt19937_64 engine_;
};

}  // namespace linleak

#endif  // LINLEAK_RNG_HPP
