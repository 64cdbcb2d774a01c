#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>

namespace antikz::rng {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). Stateless:
// every draw is a pure function of (key, counter), so parallel sampling is
// reproducible regardless of scheduling.

inline constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
inline constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM4x32A) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM4x32B) * ctr[2];
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW32A;
        key[1] += kPhiloxW32B;
    }
    return ctr;
}

// Maps a 64-bit word to (0, 1] using the top 53 bits.
inline double u64_to_unit(std::uint64_t x) {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal deviate keyed by (seed, stream, traj, step). One Philox
/// block yields two uniforms; Box-Muller takes the cosine branch.
inline double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint32_t traj,
                       std::uint32_t step) {
    const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(stream),
                                              static_cast<std::uint32_t>(stream >> 32),
                                              traj, step};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    const std::array<std::uint32_t, 4> w = philox4x32(ctr, key);
    const double u1 = u64_to_unit((static_cast<std::uint64_t>(w[0]) << 32) | w[1]);
    const double u2 = u64_to_unit((static_cast<std::uint64_t>(w[2]) << 32) | w[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Stream id from a momentum value: the raw bit pattern of k, so off-grid
/// momenta get well-defined independent streams too.
inline std::uint64_t stream_of(double k) {
    std::uint64_t bits;
    std::memcpy(&bits, &k, sizeof bits);
    return bits;
}

} // namespace antikz::rng
