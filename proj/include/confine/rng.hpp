#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "confine/vec2.hpp"

namespace confine {

/// SplitMix64 step: advances the state by the golden-gamma increment and
/// returns a mixed output. Used for seed expansion and seed derivation so
/// that every stream below is fully portable.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-index stream seed: one SplitMix64 step from state seed ^ index.
/// The xor alone is a poor mixer (consecutive indices differ in few bits),
/// so the output function does the scrambling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed ^ index;
    return splitmix64_next(state);
}

/// xoshiro256** 1.0 (Blackman & Vigna), seeded by four SplitMix64 draws.
/// Fixed output function, no platform dependence; all draws in this
/// library flow through this generator.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform point in the closed unit disk by rejection from [-1,1]^2.
    /// Acceptance probability pi/4; expected under two draws per point.
    Vec2 unit_disk() {
        for (;;) {
            const double x = uniform(-1.0, 1.0);
            const double y = uniform(-1.0, 1.0);
            if (x * x + y * y <= 1.0) return Vec2{x, y};
        }
    }

    /// Pair of independent standard normals via Box-Muller. The radial
    /// draw uses 1 - uniform01() to keep log() away from zero.
    Vec2 gaussian2() {
        const double u = 1.0 - uniform01(); // (0, 1]
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double t = 2.0 * std::numbers::pi * v;
        return Vec2{r * std::cos(t), r * std::sin(t)};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace confine
