#pragma once

#include <cstdint>

namespace modext::rng {

/// SplitMix64 finalizer: a bijective 64-bit mixer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stateless generator: bits(seed, index, lane) is a pure function, so draws
/// never depend on evaluation order or thread count.
[[nodiscard]] constexpr std::uint64_t bits(std::uint64_t seed, std::uint64_t index,
                                           std::uint64_t lane = 0) noexcept {
  std::uint64_t key = mix64(seed + 0x9e3779b97f4a7c15ULL);
  key = mix64(key ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
  return mix64(key + lane * 0x9e3779b97f4a7c15ULL);
}

/// Uniform double in the open interval (0, 1).
[[nodiscard]] constexpr double open_unit(std::uint64_t b) noexcept {
  return (static_cast<double>(b >> 11) + 0.5) * 0x1.0p-53;
}

/// Seed of the t-th independent trial derived from a master seed.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  return mix64(mix64(master ^ 0x5851f42d4c957f2dULL) + trial);
}

}  // namespace modext::rng
