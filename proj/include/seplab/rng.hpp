#pragma once

#include <cstdint>
#include <cmath>

// Counter-based RNG: every draw is a pure function of (seed, counter), so
// replicates can be generated in any order, in parallel, with bit-identical
// results.

namespace seplab::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x9E3779B97F4A7C15ULL));
}

// Uniform draw in (0,1), exclusive of both endpoints.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t z = mix(seed, counter);
    return static_cast<double>(z >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Standard normal via Box-Muller; consumes counters 2c and 2c+1.
inline double gauss(std::uint64_t seed, std::uint64_t counter) {
    const double u1 = uniform01(seed, 2 * counter);
    const double u2 = uniform01(seed, 2 * counter + 1);
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// Rademacher sign in {-1, +1}.
inline double rademacher(std::uint64_t seed, std::uint64_t counter) {
    return (mix(seed, counter) & 1u) ? 1.0 : -1.0;
}

// Seed of replicate r derived from the master seed.
inline std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t r) {
    return mix(master ^ 0xC2B2AE3D27D4EB4FULL, r);
}

}  // namespace seplab::rng
