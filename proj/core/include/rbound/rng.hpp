#pragma once

#include <cstdint>

namespace rbound {

/// Counter-based generator: the output depends only on (seed, stream, index),
/// so any sample can be regenerated independently of evaluation order.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ stream) ^ index);
}

/// Uniform on [0, 1) with 53 random bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  return static_cast<double>(counter_hash(seed, stream, index) >> 11) * 0x1.0p-53;
}

/// Uniform on the open interval (0, 1); safe for quantile functions.
inline double counter_uniform_open(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  return (static_cast<double>(counter_hash(seed, stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rbound
