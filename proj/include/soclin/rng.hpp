#ifndef SOCLIN_RNG_HPP
#define SOCLIN_RNG_HPP

#include <cstdint>
#include <random>

namespace soclin {

// All simulations draw from one std::mt19937_64 stream per run, seeded with the
// 64-bit config seed. std::uniform_*_distribution is implementation-defined, so
// the two helpers below are the whole draw protocol; an independent simulator
// that follows it reproduces runs bit-for-bit on any platform.

// One raw draw, mapped to [0, n) by modulo. The slight modulo bias is irrelevant
// at the n used here and keeps the protocol a one-liner.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

// One raw draw, top 53 bits scaled to [0, 1).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace soclin

#endif // SOCLIN_RNG_HPP
