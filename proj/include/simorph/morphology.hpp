#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simorph/image.hpp"

namespace simorph {

enum class SEShape { square, disk, cross };

inline const char* shape_name(SEShape s) {
    switch (s) {
        case SEShape::square: return "square";
        case SEShape::disk: return "disk";
        case SEShape::cross: return "cross";
    }
    throw std::logic_error("shape_name: bad enum");
}

inline SEShape parse_shape(std::string_view text) {
    if (text == "square") return SEShape::square;
    if (text == "disk") return SEShape::disk;
    if (text == "cross") return SEShape::cross;
    throw std::invalid_argument("unknown SE shape: '" + std::string(text) +
                                "' (expected square, disk or cross)");
}

/// Flat structuring element, symmetric about its center. Size 0 is the
/// single-pixel neighborhood, so every operator built on it is the identity.
///   square r: offsets {-r..r} x {-r..r}
///   disk   r: offsets with dx^2 + dy^2 <= r^2
///   cross  r: offsets with |dx| + |dy| <= r
class StructuringElement {
public:
    struct Offset {
        int dx;
        int dy;
    };

    StructuringElement(SEShape shape, int size) : shape_(shape), size_(size) {
        if (size < 0) throw std::invalid_argument("StructuringElement: size must be >= 0");
        for (int dy = -size; dy <= size; ++dy) {
            for (int dx = -size; dx <= size; ++dx) {
                if (contains(shape, size, dx, dy)) offsets_.push_back({dx, dy});
            }
        }
    }

    SEShape shape() const { return shape_; }
    int size() const { return size_; }
    const std::vector<Offset>& offsets() const { return offsets_; }

    static bool contains(SEShape shape, int size, int dx, int dy) {
        switch (shape) {
            case SEShape::square: return true;  // loop bounds already limit to the box
            case SEShape::disk: return dx * dx + dy * dy <= size * size;
            case SEShape::cross: return std::abs(dx) + std::abs(dy) <= size;
        }
        return false;
    }

private:
    SEShape shape_;
    int size_;
    std::vector<Offset> offsets_;
};

namespace detail {

/// Sliding min/max over the window [i-radius, i+radius] clamped to [0, n).
/// Monotonic-queue scan, O(n) regardless of radius. q is caller scratch of
/// at least n ints.
inline void sliding_extremum(const std::uint8_t* src, int n, int radius, std::uint8_t* dst,
                             bool take_max, int* q) {
    int head = 0;
    int tail = 0;
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int hi = std::min(n - 1, i + radius);
        for (; next <= hi; ++next) {
            const std::uint8_t v = src[next];
            while (tail > head) {
                const std::uint8_t back = src[q[tail - 1]];
                if (take_max ? back <= v : back >= v) {
                    --tail;
                } else {
                    break;
                }
            }
            q[tail++] = next;
        }
        const int lo = i - radius;
        while (q[head] < lo) ++head;
        dst[i] = src[q[head]];
    }
}

/// Square windows factor into a horizontal then a vertical 1-D pass; the
/// domain clipping acts per axis, so the result is bit-identical to the
/// direct 2-D scan.
inline Image square_extremum(const Image& img, int radius, bool take_max) {
    const int w = img.width();
    const int h = img.height();
    Image tmp(w, h);
    std::vector<int> q(static_cast<std::size_t>(std::max(w, h)));
    for (int y = 0; y < h; ++y) {
        sliding_extremum(img.data() + static_cast<std::size_t>(y) * w, w, radius,
                         tmp.data() + static_cast<std::size_t>(y) * w, take_max, q.data());
    }
    Image out(w, h);
    std::vector<std::uint8_t> col(static_cast<std::size_t>(h));
    std::vector<std::uint8_t> res(static_cast<std::size_t>(h));
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) col[static_cast<std::size_t>(y)] = tmp(x, y);
        sliding_extremum(col.data(), h, radius, res.data(), take_max, q.data());
        for (int y = 0; y < h; ++y) out(x, y) = res[static_cast<std::size_t>(y)];
    }
    return out;
}

inline Image direct_extremum(const Image& img, const StructuringElement& se, bool take_max) {
    const int w = img.width();
    const int h = img.height();
    Image out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t best = img(x, y);  // every shape contains the origin
            for (const auto& o : se.offsets()) {
                const int nx = x + o.dx;
                const int ny = y + o.dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const std::uint8_t v = img(nx, ny);
                if (take_max ? v > best : v < best) best = v;
            }
            out(x, y) = best;
        }
    }
    return out;
}

inline Image extremum(const Image& img, const StructuringElement& se, bool take_max) {
    if (se.size() == 0) return img;
    if (se.shape() == SEShape::square) return square_extremum(img, se.size(), take_max);
    return direct_extremum(img, se, take_max);
}

}  // namespace detail

/// Sliding minimum over the in-domain part of the SE window. Windows are
/// clipped at the image border: no padding value is ever introduced.
inline Image erode(const Image& img, const StructuringElement& se) {
    return detail::extremum(img, se, false);
}

/// Sliding maximum over the in-domain part of the SE window.
inline Image dilate(const Image& img, const StructuringElement& se) {
    return detail::extremum(img, se, true);
}

inline Image open(const Image& img, const StructuringElement& se) {
    return dilate(erode(img, se), se);
}

inline Image close(const Image& img, const StructuringElement& se) {
    return erode(dilate(img, se), se);
}

enum class AsfVariant { open_first, close_first };

/// Alternating sequential filter: stages i = 1..n with SE(shape, i), applied
/// in increasing size. open_first runs close_i(open_i(f)) per stage,
/// close_first runs open_i(close_i(f)).
inline Image asf(const Image& img, AsfVariant variant, int n, SEShape shape) {
    if (n < 1) throw std::invalid_argument("asf: stage count must be >= 1");
    Image f = img;
    for (int i = 1; i <= n; ++i) {
        const StructuringElement se(shape, i);
        if (variant == AsfVariant::open_first) {
            f = close(open(f, se), se);
        } else {
            f = open(close(f, se), se);
        }
    }
    return f;
}

/// Centre combination: clamps f between the two primitive outputs,
/// min(max(f, min(a,b)), max(a,b)) pixelwise.
inline Image center_from_primitives(const Image& f, const Image& a, const Image& b) {
    return pixel_min(pixel_max(f, pixel_min(a, b)), pixel_max(a, b));
}

/// Morphological centre of the two ASF variants of stage count n.
inline Image center(const Image& img, int n, SEShape shape) {
    if (n < 1) throw std::invalid_argument("center: stage count must be >= 1");
    const Image psi1 = asf(img, AsfVariant::open_first, n, shape);
    const Image psi2 = asf(img, AsfVariant::close_first, n, shape);
    return center_from_primitives(img, psi1, psi2);
}

enum class MorphOp { open, close };

struct OpStep {
    MorphOp op;
    int size;

    friend bool operator==(const OpStep&, const OpStep&) = default;
    friend auto operator<=>(const OpStep&, const OpStep&) = default;
};

enum class FilterKind { asf_open_first, asf_close_first, center, op_sequence };

/// Declarative filter pipeline. Text form (used by the CLI and reports):
///   center:N  |  asf-oc:N  |  asf-co:N  |  seq:open@1,close@2,...
struct FilterSpec {
    FilterKind kind = FilterKind::center;
    int size = 1;                       // asf_* and center kinds
    std::vector<OpStep> ops;            // op_sequence kind
    SEShape se_shape = SEShape::square;

    void validate() const {
        if (kind == FilterKind::op_sequence) {
            if (ops.empty()) throw std::invalid_argument("FilterSpec: empty op sequence");
            for (const OpStep& s : ops) {
                if (s.size < 1) throw std::invalid_argument("FilterSpec: op size must be >= 1");
            }
        } else {
            if (size < 1) throw std::invalid_argument("FilterSpec: size must be >= 1");
        }
    }

    std::string to_string() const {
        switch (kind) {
            case FilterKind::center: return "center:" + std::to_string(size);
            case FilterKind::asf_open_first: return "asf-oc:" + std::to_string(size);
            case FilterKind::asf_close_first: return "asf-co:" + std::to_string(size);
            case FilterKind::op_sequence: {
                std::string out = "seq:";
                for (std::size_t i = 0; i < ops.size(); ++i) {
                    if (i) out += ',';
                    out += (ops[i].op == MorphOp::open) ? "open@" : "close@";
                    out += std::to_string(ops[i].size);
                }
                return out;
            }
        }
        throw std::logic_error("FilterSpec::to_string: bad enum");
    }

    static FilterSpec parse(std::string_view text, SEShape shape = SEShape::square);

    friend bool operator==(const FilterSpec&, const FilterSpec&) = default;
};

namespace detail {

inline int parse_positive_int(std::string_view text, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
        throw std::invalid_argument(std::string("expected positive integer for ") + what +
                                    ", got '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace detail

inline FilterSpec FilterSpec::parse(std::string_view text, SEShape shape) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("filter spec '" + std::string(text) +
                                    "': expected kind:argument");
    }
    const std::string_view kind = text.substr(0, colon);
    const std::string_view arg = text.substr(colon + 1);
    FilterSpec spec;
    spec.se_shape = shape;
    if (kind == "center") {
        spec.kind = FilterKind::center;
        spec.size = detail::parse_positive_int(arg, "center size");
    } else if (kind == "asf-oc") {
        spec.kind = FilterKind::asf_open_first;
        spec.size = detail::parse_positive_int(arg, "asf size");
    } else if (kind == "asf-co") {
        spec.kind = FilterKind::asf_close_first;
        spec.size = detail::parse_positive_int(arg, "asf size");
    } else if (kind == "seq") {
        spec.kind = FilterKind::op_sequence;
        std::string_view rest = arg;
        while (!rest.empty()) {
            const std::size_t comma = rest.find(',');
            const std::string_view tok =
                (comma == std::string_view::npos) ? rest : rest.substr(0, comma);
            rest = (comma == std::string_view::npos) ? std::string_view{}
                                                     : rest.substr(comma + 1);
            const std::size_t at = tok.find('@');
            if (at == std::string_view::npos) {
                throw std::invalid_argument("filter spec step '" + std::string(tok) +
                                            "': expected op@size");
            }
            const std::string_view op = tok.substr(0, at);
            OpStep step{};
            if (op == "open") {
                step.op = MorphOp::open;
            } else if (op == "close") {
                step.op = MorphOp::close;
            } else {
                throw std::invalid_argument("filter spec step '" + std::string(tok) +
                                            "': unknown op (expected open or close)");
            }
            step.size = detail::parse_positive_int(tok.substr(at + 1), "op size");
            spec.ops.push_back(step);
        }
        if (spec.ops.empty()) {
            throw std::invalid_argument("filter spec 'seq:': empty op sequence");
        }
    } else {
        throw std::invalid_argument("unknown filter kind '" + std::string(kind) +
                                    "' (expected center, asf-oc, asf-co or seq)");
    }
    spec.validate();
    return spec;
}

/// Run a FilterSpec: dispatches to asf/center or applies the op sequence
/// left to right.
inline Image apply_filter(const Image& img, const FilterSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case FilterKind::asf_open_first:
            return asf(img, AsfVariant::open_first, spec.size, spec.se_shape);
        case FilterKind::asf_close_first:
            return asf(img, AsfVariant::close_first, spec.size, spec.se_shape);
        case FilterKind::center:
            return center(img, spec.size, spec.se_shape);
        case FilterKind::op_sequence: {
            Image f = img;
            for (const OpStep& step : spec.ops) {
                const StructuringElement se(spec.se_shape, step.size);
                f = (step.op == MorphOp::open) ? open(f, se) : close(f, se);
            }
            return f;
        }
    }
    throw std::logic_error("apply_filter: bad enum");
}

}  // namespace simorph
