#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cmbd {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic seed derived from a master seed and any number of keys.
/// Depends only on the values, never on call order across threads.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(master);
  for (const auto k : keys) h = mix64(h ^ mix64(k));
  return h;
}

}  // namespace cmbd
