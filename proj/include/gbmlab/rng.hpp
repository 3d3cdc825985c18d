#pragma once

#include <cstdint>
#include <random>

namespace gbmlab {

// SplitMix64 finalizer. Used to condition raw seeds and to derive
// independent per-replicate streams from a base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream seed for one (cell, replicate) pair. Pure function of its inputs,
// so replicates can be computed in any order (or in parallel) and still
// see the same random numbers.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t cell,
                                 std::uint64_t replicate) {
  std::uint64_t s = splitmix64(base_seed ^ (0x8f1bbcdcbfa53e0bULL * (cell + 1)));
  return splitmix64(s ^ (0xd6e8feb86659fd93ULL * (replicate + 1)));
}

// mt19937_64 with a fixed uniform-[0,1) mapping on the raw 64-bit output.
// The engine's sequence is pinned by the standard; mapping the top 53 bits
// ourselves avoids std::uniform_real_distribution, whose output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gbmlab
