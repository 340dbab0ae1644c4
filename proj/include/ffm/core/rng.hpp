#pragma once

#include <cstdint>
#include <random>

namespace ffm {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent deterministic stream for item `index` of a run seeded with `seed`.
// mt19937_64's output sequence is fixed by the standard, so streams are
// identical across platforms.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0x5851f42d4c957f2dULL)));
}

// Uniform in [0, 1) from the top 53 bits. std::uniform_real_distribution is
// implementation-defined, this is not.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t v = gen();
    if (v < limit) return v % n;
  }
}

}  // namespace ffm
