#pragma once

#include <cstdint>
#include <random>

namespace dhtk {

/// Uniform draw from {0, ..., n-1} by rejection on the top bits of the
/// generator's output. std::uniform_int_distribution is implementation
/// defined; this keeps seeded runs reproducible across standard libraries.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// splitmix64 step — used to derive independent per-chunk seeds from a user
/// seed without correlating the resulting mt19937_64 streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace dhtk
