#pragma once

#include <cstdint>
#include <stdexcept>

#include "simorph/image.hpp"
#include "simorph/rng.hpp"

namespace simorph {

struct NoiseSpec {
    double probability = 0.0;  // per-pixel replacement probability in [0, 1]
    std::uint64_t seed = 0;

    void validate() const {
        if (!(probability >= 0.0 && probability <= 1.0)) {
            throw std::invalid_argument("NoiseSpec: probability must be in [0, 1]");
        }
    }
};

/// Salt-and-pepper corruption. Pixels are visited row-major; each pixel
/// consumes exactly two draws from a SplitMix64 stream seeded with
/// spec.seed: the first (mapped to [0,1) via the top 53 bits) decides
/// replacement when it is < p, the second's top bit picks 255 over 0.
/// Both draws happen whether or not the pixel is replaced, so the stream
/// position after pixel i is always 2(i+1).
inline Image add_salt_pepper(const Image& img, const NoiseSpec& spec) {
    spec.validate();
    SplitMix64 rng(spec.seed);
    Image out = img;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double u = rng.next_unit();
        const std::uint64_t v = rng.next_u64();
        if (u < spec.probability) {
            out[i] = (v >> 63) ? std::uint8_t{255} : std::uint8_t{0};
        }
    }
    return out;
}

}  // namespace simorph
