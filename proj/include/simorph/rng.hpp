#pragma once

#include <cstdint>

namespace simorph {

/// splitmix64 (Steele, Lea, Vigna). The whole generator is the recurrence
///
///   state += 0x9e3779b97f4a7c15
///   z = state
///   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   output = z ^ (z >> 31)
///
/// so any implementation of these four lines reproduces the stream for a
/// given seed, on any platform. Every seed is valid, including 0.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), from the top 53 bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform-enough integer in [0, bound). bound must be > 0; the modulo
    /// bias is below 2^-32 for the bounds used here.
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace simorph
