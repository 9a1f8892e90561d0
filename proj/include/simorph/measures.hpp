#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "simorph/diagrams.hpp"
#include "simorph/image.hpp"
#include "simorph/morphology.hpp"

namespace simorph {

/// How the per-(r,k) products of the relative measure are totalled.
/// elementwise_volume multiplies the two k-weighted histograms cell by cell
/// before summing; per_r_scalar_product multiplies the per-r sums instead.
enum class MstarAggregation { elementwise_volume, per_r_scalar_product };

inline const char* aggregation_name(MstarAggregation a) {
    switch (a) {
        case MstarAggregation::elementwise_volume: return "elementwise_volume";
        case MstarAggregation::per_r_scalar_product: return "per_r_scalar_product";
    }
    throw std::logic_error("aggregation_name: bad enum");
}

inline MstarAggregation parse_aggregation(std::string_view text) {
    if (text == "elementwise_volume") return MstarAggregation::elementwise_volume;
    if (text == "per_r_scalar_product") return MstarAggregation::per_r_scalar_product;
    throw std::invalid_argument("unknown aggregation: '" + std::string(text) +
                                "' (expected elementwise_volume or per_r_scalar_product)");
}

/// Absolute measure M of a difference image: sum over k of k * H(k).
/// Algebraically identical to volume(diff).
inline std::uint64_t measure_m(const Image& diff) {
    const Histogram h = histogram(diff);
    std::uint64_t m = 0;
    for (int k = 0; k < 256; ++k) m += static_cast<std::uint64_t>(k) * h[k];
    return m;
}

/// Row r is the non-cumulative SI row of the image at opening size r,
/// weighted by intensity: rows[r][k] = k * H(k) of open_r(img).
using WeightedSiRows = std::vector<std::array<std::uint64_t, 256>>;

inline WeightedSiRows weighted_si_rows(const Image& img, int r_max, SEShape shape) {
    const SIDiagram d = si_diagram(img, r_max, shape, /*cumulative=*/false);
    WeightedSiRows rows(static_cast<std::size_t>(r_max) + 1);
    for (int r = 0; r <= r_max; ++r) {
        for (int k = 0; k < 256; ++k) {
            rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] =
                static_cast<std::uint64_t>(k) * d.at(r, k);
        }
    }
    return rows;
}

/// Element r is M of the difference image opened at size r.
inline std::vector<std::uint64_t> measure_m_family(const Image& diff, int r_max,
                                                   SEShape shape) {
    const WeightedSiRows rows = weighted_si_rows(diff, r_max, shape);
    std::vector<std::uint64_t> family;
    family.reserve(rows.size());
    for (const auto& row : rows) {
        std::uint64_t sum = 0;
        for (std::uint64_t v : row) sum += v;
        family.push_back(sum);
    }
    return family;
}

/// Total two weighted row families into a single M* value.
inline std::uint64_t mstar_combine(const WeightedSiRows& a, const WeightedSiRows& b,
                                   MstarAggregation aggregation) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("mstar_combine: row families differ in r_max");
    }
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (aggregation == MstarAggregation::elementwise_volume) {
            for (int k = 0; k < 256; ++k) {
                total += a[r][static_cast<std::size_t>(k)] * b[r][static_cast<std::size_t>(k)];
            }
        } else {
            std::uint64_t sa = 0;
            std::uint64_t sb = 0;
            for (int k = 0; k < 256; ++k) {
                sa += a[r][static_cast<std::size_t>(k)];
                sb += b[r][static_cast<std::size_t>(k)];
            }
            total += sa * sb;
        }
    }
    return total;
}

/// Relative measure M* of a candidate filter output against the input n and
/// the other candidate's output. The first factor comes from |n - ft_out|,
/// the cross factor from |ft_out - other_out|; both are evaluated over
/// openings r = 0..r_max on non-cumulative SI rows.
inline std::uint64_t measure_mstar(const Image& n, const Image& ft_out,
                                   const Image& other_out, int r_max, SEShape shape,
                                   MstarAggregation aggregation =
                                       MstarAggregation::elementwise_volume) {
    detail::require_same_size(n, ft_out, "measure_mstar");
    detail::require_same_size(n, other_out, "measure_mstar");
    const WeightedSiRows a = weighted_si_rows(abs_diff(n, ft_out), r_max, shape);
    const WeightedSiRows b = weighted_si_rows(abs_diff(ft_out, other_out), r_max, shape);
    return mstar_combine(a, b, aggregation);
}

struct MeasureReport {
    std::uint64_t m_scalar = 0;
    std::vector<std::uint64_t> m_per_r;
    std::optional<std::uint64_t> mstar;  // present when a cross candidate was supplied
    MstarAggregation aggregation = MstarAggregation::elementwise_volume;
};

}  // namespace simorph
