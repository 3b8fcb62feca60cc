#pragma once

#include <cstdint>

namespace oeb {

// Counter-based splitmix64: the n-th draw depends only on (seed, n), so
// streams can be evaluated out of order and shared across threads.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform draw in [0, 1) with 53 random bits.
inline double uniform01_at(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(splitmix64_at(seed, index) >> 11) * 0x1.0p-53;
}

inline constexpr std::uint64_t kDefaultSeed = 42;

} // namespace oeb
