#pragma once

#include <cstdint>
#include <random>

namespace sqc {

// All randomness in the project flows through these helpers so that results
// are bit-identical across platforms. std::mt19937_64 has a
// standard-mandated output sequence; the distributions in <random> do not,
// so we map raw words to what we need ourselves.

inline double uniform01(std::mt19937_64& rng) {
  // 53 random bits in [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  // modulo bias is irrelevant at the sizes used here
  return rng() % n;
}

}  // namespace sqc
