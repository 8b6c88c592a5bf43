#pragma once

#include <cstdint>
#include <random>

namespace qport {

/// Deterministic random streams. Every stochastic routine takes an explicit
/// 64-bit seed and derives sub-streams with derive_stream(seed, index), so
/// results do not depend on call order or the platform's distribution
/// implementations (std::uniform_real_distribution is not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// splitmix64 finalizer over (seed, index); independent streams for
    /// parallel tasks.
    static std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Map a raw 64-bit word to [0,1) with 53 bits.
    static double to_unit(std::uint64_t raw) {
        return static_cast<double>(raw >> 11) * 0x1.0p-53;
    }

    /// Map a raw 64-bit word to [0, bound) (Lemire reduction; the O(2^-64)
    /// bias is irrelevant at our draw counts).
    static std::uint64_t bounded(std::uint64_t raw, std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(raw) * bound) >> 64);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Standard normal via Box-Muller (used only by synthetic-data tests).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace qport
