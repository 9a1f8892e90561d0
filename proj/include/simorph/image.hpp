#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace simorph {

/// 8-bit grayscale image. Pixels are stored row-major with the origin
/// (0,0) at the top-left corner.
class Image {
public:
    Image(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height) {
        check_dims(width, height);
        pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    Image(int width, int height, std::vector<std::uint8_t> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        check_dims(width, height);
        if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw std::invalid_argument("Image: pixel buffer size does not match dimensions");
        }
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }

    std::uint8_t operator()(int x, int y) const { return pixels_[index(x, y)]; }
    std::uint8_t& operator()(int x, int y) { return pixels_[index(x, y)]; }

    std::uint8_t operator[](std::size_t i) const { return pixels_[i]; }
    std::uint8_t& operator[](std::size_t i) { return pixels_[i]; }

    const std::vector<std::uint8_t>& pixels() const { return pixels_; }
    std::uint8_t* data() { return pixels_.data(); }
    const std::uint8_t* data() const { return pixels_.data(); }

    bool same_size(const Image& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    static void check_dims(int width, int height) {
        if (width <= 0 || height <= 0) {
            throw std::invalid_argument("Image: dimensions must be positive");
        }
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

/// Intensity histogram: counts[k] is the number of pixels with value k.
struct Histogram {
    std::array<std::uint64_t, 256> counts{};

    std::uint64_t operator[](int k) const { return counts[static_cast<std::size_t>(k)]; }
    std::uint64_t& operator[](int k) { return counts[static_cast<std::size_t>(k)]; }

    std::uint64_t total() const {
        return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    }
};

inline Histogram histogram(const Image& img) {
    Histogram h;
    for (std::uint8_t v : img.pixels()) ++h.counts[v];
    return h;
}

/// Sum of all pixel intensities.
inline std::uint64_t volume(const Image& img) {
    std::uint64_t sum = 0;
    for (std::uint8_t v : img.pixels()) sum += v;
    return sum;
}

namespace detail {

inline void require_same_size(const Image& a, const Image& b, const char* op) {
    if (!a.same_size(b)) {
        throw std::invalid_argument(std::string(op) + ": image dimensions differ (" +
                                    std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                    " vs " + std::to_string(b.width()) + "x" +
                                    std::to_string(b.height()) + ")");
    }
}

}  // namespace detail

/// Pixelwise |a - b|. Inputs must have identical dimensions.
inline Image abs_diff(const Image& a, const Image& b) {
    detail::require_same_size(a, b, "abs_diff");
    Image out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        out[i] = static_cast<std::uint8_t>(d < 0 ? -d : d);
    }
    return out;
}

/// Pixelwise 255 - v.
inline Image invert(const Image& img) {
    Image out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(255 - img[i]);
    }
    return out;
}

inline Image pixel_min(const Image& a, const Image& b) {
    detail::require_same_size(a, b, "pixel_min");
    Image out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
    return out;
}

inline Image pixel_max(const Image& a, const Image& b) {
    detail::require_same_size(a, b, "pixel_max");
    Image out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

}  // namespace simorph
