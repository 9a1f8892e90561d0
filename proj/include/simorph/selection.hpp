#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "simorph/image.hpp"
#include "simorph/measures.hpp"
#include "simorph/morphology.hpp"

namespace simorph {

enum class Winner { ft1, ft2, tie };

inline const char* winner_name(Winner w) {
    switch (w) {
        case Winner::ft1: return "ft1";
        case Winner::ft2: return "ft2";
        case Winner::tie: return "tie";
    }
    throw std::logic_error("winner_name: bad enum");
}

struct SelectionReport {
    std::array<FilterSpec, 2> candidate_specs;
    std::array<std::uint64_t, 2> mstar_values{};
    Winner winner = Winner::tie;
    std::vector<std::uint64_t> m_family_n_ft1;
    std::vector<std::uint64_t> m_family_n_ft2;
    std::vector<std::uint64_t> m_family_cross;
    int r_max = 0;
    MstarAggregation aggregation = MstarAggregation::elementwise_volume;
    bool degenerate = false;  // some candidate reproduced n exactly
};

namespace detail {

inline std::vector<std::uint64_t> row_sums(const WeightedSiRows& rows) {
    std::vector<std::uint64_t> sums;
    sums.reserve(rows.size());
    for (const auto& row : rows) {
        std::uint64_t s = 0;
        for (std::uint64_t v : row) s += v;
        sums.push_back(s);
    }
    return sums;
}

}  // namespace detail

/// Run both candidate filters on n, compute the two relative measures over
/// the shared cross difference |FT1 - FT2|, and report the lower-M*
/// candidate. The cross rows are computed once, so both M* values see the
/// identical cross factor. A candidate whose output equals n exactly is
/// flagged degenerate (its M* is 0 by construction) but still reported;
/// policy is left to the caller.
inline SelectionReport select_filter(const Image& n, const FilterSpec& spec1,
                                     const FilterSpec& spec2, int r_max, SEShape shape,
                                     MstarAggregation aggregation =
                                         MstarAggregation::elementwise_volume) {
    const Image ft1 = apply_filter(n, spec1);
    const Image ft2 = apply_filter(n, spec2);
    const Image d1 = abs_diff(n, ft1);
    const Image d2 = abs_diff(n, ft2);
    const Image cross = abs_diff(ft1, ft2);

    const WeightedSiRows a1 = weighted_si_rows(d1, r_max, shape);
    const WeightedSiRows a2 = weighted_si_rows(d2, r_max, shape);
    const WeightedSiRows b = weighted_si_rows(cross, r_max, shape);

    SelectionReport rep;
    rep.candidate_specs = {spec1, spec2};
    rep.mstar_values = {mstar_combine(a1, b, aggregation), mstar_combine(a2, b, aggregation)};
    if (rep.mstar_values[0] < rep.mstar_values[1]) {
        rep.winner = Winner::ft1;
    } else if (rep.mstar_values[1] < rep.mstar_values[0]) {
        rep.winner = Winner::ft2;
    } else {
        rep.winner = Winner::tie;
    }
    rep.m_family_n_ft1 = detail::row_sums(a1);
    rep.m_family_n_ft2 = detail::row_sums(a2);
    rep.m_family_cross = detail::row_sums(b);
    rep.r_max = r_max;
    rep.aggregation = aggregation;
    rep.degenerate = (volume(d1) == 0) || (volume(d2) == 0);
    return rep;
}

/// JSON serialization with fixed key order matching the report fields.
inline std::string report_to_json(const SelectionReport& rep) {
    nlohmann::ordered_json j;
    j["candidate_specs"] = {rep.candidate_specs[0].to_string(),
                            rep.candidate_specs[1].to_string()};
    j["mstar_values"] = {rep.mstar_values[0], rep.mstar_values[1]};
    j["winner"] = winner_name(rep.winner);
    j["m_family_n_ft1"] = rep.m_family_n_ft1;
    j["m_family_n_ft2"] = rep.m_family_n_ft2;
    j["m_family_cross"] = rep.m_family_cross;
    j["r_max"] = rep.r_max;
    j["aggregation"] = aggregation_name(rep.aggregation);
    j["degenerate"] = rep.degenerate;
    return j.dump(2) + "\n";
}

}  // namespace simorph
