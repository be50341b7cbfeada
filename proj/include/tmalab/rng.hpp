#pragma once

#include <cmath>
#include <cstdint>

namespace tmalab {

/**
 * Deterministic PRNG for reproducible Monte Carlo runs.
 *
 * Core generator is splitmix64 (Steele/Lea/Flood mixing constants): one 64-bit
 * state advanced by a fixed odd increment, output finalized by two xor-shift
 * multiplies. Every experiment derives child seeds through derive_seed(), so
 * parallel runs and parallel samples get independent streams while the whole
 * pipeline stays a pure function of (inputs, seed).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (cosine branch). Consumes two uniforms.
    double next_gaussian() {
        double u1 = next_unit();
        double u2 = next_unit();
        if (u1 <= 0.0) {
            u1 = 0x1.0p-53;
        }
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

private:
    static constexpr double kTwoPi = 6.28318530717958647692;
    std::uint64_t state_;
};

/// Fixed mixing function for per-run / per-sample child seeds:
/// one splitmix64 finalization of (base + golden-ratio increment * (index + 1)).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace tmalab
