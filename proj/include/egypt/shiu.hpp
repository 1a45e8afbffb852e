#pragma once

// Parts-into-one verification: exhaust representations of 1 as l distinct odd
// unit fractions (denominators >= 3) level by level. Levels up to 9 are fully
// certified by the search bounds; beyond that runs are exploratory.

#include <egypt/enumerate.hpp>

#include <chrono>
#include <vector>

namespace egypt {

constexpr std::size_t SHIU_CERTIFIED_MAX = 9;

// distinct odd unit fractions, none smaller than 1/3, an odd number of parts
inline RestrictionProfile odd_distinct_profile() {
    return {.distinct = true,
            .odd_only = true,
            .min_denominator = 3,
            .parts_parity = PartsParity::odd};
}

// 1 = 1/3 + 1/5 + 1/7 + 1/9 + 1/11 + 1/15 + 1/35 + 1/45 + 1/231
inline const Representation& seed_equation() {
    static const Representation seed =
        canonicalize(Ratio(1), {3, 5, 7, 9, 11, 15, 35, 45, 231});
    return seed;
}

// all nine-part solutions, in enumeration order
inline const std::vector<Representation>& reference_solutions() {
    static const std::vector<Representation> sols = [] {
        std::vector<Representation> v;
        v.push_back(canonicalize(Ratio(1), {3, 5, 7, 9, 11, 15, 21, 135, 10395}));
        v.push_back(canonicalize(Ratio(1), {3, 5, 7, 9, 11, 15, 21, 165, 693}));
        v.push_back(canonicalize(Ratio(1), {3, 5, 7, 9, 11, 15, 21, 231, 315}));
        v.push_back(canonicalize(Ratio(1), {3, 5, 7, 9, 11, 15, 33, 45, 385}));
        v.push_back(canonicalize(Ratio(1), {3, 5, 7, 9, 11, 15, 35, 45, 231}));
        for (const auto& r : v)
            if (!validate(r, odd_distinct_profile()).empty())
                throw std::logic_error("reference solution violates the profile");
        return v;
    }();
    return sols;
}

struct ShiuLevelResult {
    std::size_t l = 0;
    std::uint64_t solution_count = 0;
    std::vector<Representation> solutions;
    bool complete = false;
    bool authoritative = false;  // certified scope: l <= SHIU_CERTIFIED_MAX
    std::uint64_t nodes_visited = 0;
    double wall_ms = 0.0;
};

struct ShiuReport {
    std::vector<ShiuLevelResult> levels;
    bool nine_ran = false;
    bool reference_match = false;  // l = 9 ran complete and equals the known list
};

inline ShiuLevelResult verify_shiu_level(std::size_t l, const SearchBounds& bounds = {},
                                         unsigned parallelism = 1, SearchProbe* probe = nullptr) {
    if (l < 1) throw invalid_argument("level must be >= 1");
    ShiuLevelResult lvl;
    lvl.l = l;
    lvl.authoritative = l <= SHIU_CERTIFIED_MAX;
    auto t0 = std::chrono::steady_clock::now();
    auto res = enumerate_reps(Ratio(1), l, odd_distinct_profile(), bounds, parallelism, probe);
    auto t1 = std::chrono::steady_clock::now();
    lvl.solution_count = res.count;
    lvl.solutions = std::move(res.reps);
    lvl.complete = res.complete;
    lvl.nodes_visited = res.nodes_visited;
    lvl.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return lvl;
}

// runs levels 3..l_max in order; l_max beyond 9 is allowed but uncertified
inline ShiuReport verify_shiu(std::size_t l_max, const SearchBounds& bounds = {},
                              unsigned parallelism = 1, SearchProbe* probe = nullptr) {
    if (l_max < 3) throw invalid_argument("l_max must be >= 3");
    ShiuReport report;
    for (std::size_t l = 3; l <= l_max; ++l) {
        auto lvl = verify_shiu_level(l, bounds, parallelism, probe);
        if (l == 9) {
            report.nine_ran = true;
            report.reference_match = lvl.complete && lvl.solutions == reference_solutions();
        }
        report.levels.push_back(std::move(lvl));
    }
    return report;
}

struct OpnFilterResult {
    std::vector<Representation> kept;
    std::vector<std::pair<Representation, std::vector<Violation>>> rejected;
};

inline OpnFilterResult opn_filter(const std::vector<Representation>& reps,
                                  const RestrictionProfile& profile) {
    OpnFilterResult out;
    for (const auto& r : reps) {
        auto v = validate(r, profile);
        if (v.empty())
            out.kept.push_back(r);
        else
            out.rejected.emplace_back(r, std::move(v));
    }
    return out;
}

}  // namespace egypt
