#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "simorph/image.hpp"

namespace simorph {

/// Decode failure; offset() is the byte position the parser stopped at.
class PgmError : public std::runtime_error {
public:
    PgmError(std::size_t offset, const std::string& msg)
        : std::runtime_error("pgm: byte " + std::to_string(offset) + ": " + msg),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

class PgmParser {
public:
    explicit PgmParser(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    Image parse() {
        const std::string magic = read_magic();
        const bool binary = (magic == "P5");
        const long width = read_number("width");
        const long height = read_number("height");
        const long maxval = read_number("maxval");
        if (width <= 0 || height <= 0) {
            throw PgmError(pos_, "dimensions must be positive");
        }
        if (maxval <= 0 || maxval > 255) {
            throw PgmError(pos_, "maxval " + std::to_string(maxval) + " out of range (1..255)");
        }
        const std::size_t count =
            static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
        std::vector<std::uint8_t> pixels;
        pixels.reserve(count);
        if (binary) {
            // exactly one whitespace byte between maxval and the raster
            if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
                throw PgmError(pos_, "expected single whitespace before binary raster");
            }
            ++pos_;
            if (bytes_.size() - pos_ < count) {
                throw PgmError(bytes_.size(), "truncated raster: expected " +
                                                  std::to_string(count) + " bytes, have " +
                                                  std::to_string(bytes_.size() - pos_));
            }
            for (std::size_t i = 0; i < count; ++i) pixels.push_back(bytes_[pos_ + i]);
            pos_ += count;
        } else {
            for (std::size_t i = 0; i < count; ++i) {
                const long v = read_number("pixel value");
                if (v > maxval) {
                    throw PgmError(pos_, "pixel value " + std::to_string(v) +
                                             " exceeds maxval " + std::to_string(maxval));
                }
                pixels.push_back(static_cast<std::uint8_t>(v));
            }
        }
        return Image(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
    }

private:
    static bool is_space(std::uint8_t c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    }

    std::string read_magic() {
        if (bytes_.size() < 2) throw PgmError(0, "missing magic number");
        const char m0 = static_cast<char>(bytes_[0]);
        const char m1 = static_cast<char>(bytes_[1]);
        if (m0 != 'P' || (m1 != '2' && m1 != '5')) {
            throw PgmError(0, "not a PGM file (expected P2 or P5 magic)");
        }
        pos_ = 2;
        return std::string{m0, m1};
    }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    long read_number(const char* what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) {
            throw PgmError(pos_, std::string("truncated file while reading ") + what);
        }
        if (bytes_[pos_] < '0' || bytes_[pos_] > '9') {
            throw PgmError(pos_, std::string("expected digit for ") + what);
        }
        long value = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) {
                throw PgmError(pos_, std::string("number too large for ") + what);
            }
            ++pos_;
        }
        return value;
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Decode a binary (P5) or ASCII (P2) PGM with maxval <= 255.
inline Image load_pgm(const std::vector<std::uint8_t>& bytes) {
    return detail::PgmParser(bytes).parse();
}

/// Encode as PGM with maxval 255. P5 by default, P2 when ascii is set.
inline std::vector<std::uint8_t> save_pgm(const Image& img, bool ascii = false) {
    std::string header = ascii ? "P2\n" : "P5\n";
    header += std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    if (!ascii) {
        out.insert(out.end(), img.pixels().begin(), img.pixels().end());
        return out;
    }
    // netpbm asks for text lines no longer than 70 characters
    std::string line;
    for (std::size_t i = 0; i < img.size(); ++i) {
        const std::string tok = std::to_string(static_cast<int>(img[i]));
        if (!line.empty() && line.size() + 1 + tok.size() > 70) {
            line += '\n';
            out.insert(out.end(), line.begin(), line.end());
            line.clear();
        }
        if (!line.empty()) line += ' ';
        line += tok;
    }
    if (!line.empty()) {
        line += '\n';
        out.insert(out.end(), line.begin(), line.end());
    }
    return out;
}

inline Image read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_pgm(bytes);
}

inline void write_pgm_file(const std::string& path, const Image& img, bool ascii = false) {
    const std::vector<std::uint8_t> bytes = save_pgm(img, ascii);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace simorph
