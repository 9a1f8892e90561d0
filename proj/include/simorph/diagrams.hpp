#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "simorph/image.hpp"
#include "simorph/morphology.hpp"

namespace simorph {

/// Which granulometric sequence feeds a diagram. Openings are the default;
/// closings are the dual variant.
enum class GranulometryOp { opening, closing };

/// Size/Intensity diagram: cells[r][k] holds the histogram count of the
/// image opened (or closed) at size r, either plain or accumulated over k.
struct SIDiagram {
    int r_max = 0;
    bool cumulative = false;
    std::uint64_t source_pixel_count = 0;
    std::vector<std::array<std::uint64_t, 256>> cells;  // (r_max + 1) rows

    std::uint64_t at(int r, int k) const {
        return cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
    }
};

/// Element r is the input opened (closed) with SE(shape, r); element 0 is
/// the image itself.
inline std::vector<Image> opening_sequence(const Image& img, int r_max, SEShape shape,
                                           GranulometryOp op = GranulometryOp::opening) {
    if (r_max < 0) throw std::invalid_argument("opening_sequence: r_max must be >= 0");
    std::vector<Image> seq;
    seq.reserve(static_cast<std::size_t>(r_max) + 1);
    for (int r = 0; r <= r_max; ++r) {
        const StructuringElement se(shape, r);
        seq.push_back(op == GranulometryOp::opening ? open(img, se) : close(img, se));
    }
    return seq;
}

inline SIDiagram si_diagram(const Image& img, int r_max, SEShape shape, bool cumulative,
                            GranulometryOp op = GranulometryOp::opening) {
    if (r_max < 0) throw std::invalid_argument("si_diagram: r_max must be >= 0");
    SIDiagram d;
    d.r_max = r_max;
    d.cumulative = cumulative;
    d.source_pixel_count = img.size();
    d.cells.resize(static_cast<std::size_t>(r_max) + 1);
    for (int r = 0; r <= r_max; ++r) {
        const StructuringElement se(shape, r);
        const Image opened = (op == GranulometryOp::opening) ? open(img, se) : close(img, se);
        const Histogram h = histogram(opened);
        auto& row = d.cells[static_cast<std::size_t>(r)];
        if (cumulative) {
            std::uint64_t acc = 0;
            for (int k = 0; k < 256; ++k) {
                acc += h[k];
                row[static_cast<std::size_t>(k)] = acc;
            }
        } else {
            for (int k = 0; k < 256; ++k) row[static_cast<std::size_t>(k)] = h[k];
        }
    }
    return d;
}

/// Render a diagram as an image: columns index r, rows index k, origin at
/// the top-left. Each cell becomes an x_scale * y_scale block with value
/// min(255, count * value_scale). Crops keep the first r_crop columns and
/// k_crop rows.
inline Image render_si(const SIDiagram& d, int x_scale = 5, int y_scale = 2,
                       int value_scale = 50, std::optional<int> r_crop = std::nullopt,
                       std::optional<int> k_crop = std::nullopt) {
    if (x_scale < 1 || y_scale < 1 || value_scale < 1) {
        throw std::invalid_argument("render_si: scales must be >= 1");
    }
    const int total_cols = d.r_max + 1;
    const int cols = r_crop.value_or(total_cols);
    const int rows = k_crop.value_or(256);
    if (cols < 1 || cols > total_cols) {
        throw std::invalid_argument("render_si: r_crop " + std::to_string(cols) +
                                    " outside 1.." + std::to_string(total_cols));
    }
    if (rows < 1 || rows > 256) {
        throw std::invalid_argument("render_si: k_crop " + std::to_string(rows) +
                                    " outside 1..256");
    }
    Image out(cols * x_scale, rows * y_scale);
    for (int r = 0; r < cols; ++r) {
        for (int k = 0; k < rows; ++k) {
            const std::uint64_t scaled =
                d.at(r, k) * static_cast<std::uint64_t>(value_scale);
            const std::uint8_t v =
                scaled > 255 ? std::uint8_t{255} : static_cast<std::uint8_t>(scaled);
            for (int j = 0; j < y_scale; ++j) {
                for (int i = 0; i < x_scale; ++i) {
                    out(r * x_scale + i, k * y_scale + j) = v;
                }
            }
        }
    }
    return out;
}

/// CSV dump: a "# cumulative=..." comment, an "r,k,count" header, then one
/// line per cell in r-major order.
inline std::string export_csv(const SIDiagram& d) {
    std::string out = d.cumulative ? "# cumulative=true\n" : "# cumulative=false\n";
    out += "r,k,count\n";
    for (int r = 0; r <= d.r_max; ++r) {
        for (int k = 0; k < 256; ++k) {
            out += std::to_string(r);
            out += ',';
            out += std::to_string(k);
            out += ',';
            out += std::to_string(d.at(r, k));
            out += '\n';
        }
    }
    return out;
}

}  // namespace simorph
