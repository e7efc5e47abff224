#pragma once

#include <cstdint>
#include <random>

#include "mlqubo/problem.hpp"

namespace mlqubo {

// splitmix64 step; used to derive independent seeds from (seed, index) pairs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt = 0) {
  return std::mt19937_64(mix_seed(seed, salt));
}

inline Bits random_bits(int n, std::mt19937_64& rng) {
  Bits b(static_cast<std::size_t>(n));
  for (auto& bit : b) bit = static_cast<std::uint8_t>(rng() & 1u);
  return b;
}

}  // namespace mlqubo
