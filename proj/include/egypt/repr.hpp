#pragma once

// Unit-fraction representations: a positive rational target together with a
// nondecreasing list of denominators whose reciprocals sum to it exactly.

#include <egypt/exactnum.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace egypt {

struct sum_mismatch : error {
    sum_mismatch(const Ratio& actual_, const Ratio& target_)
        : error("SumMismatch",
                "denominators sum to " + frac(actual_) + ", target is " + frac(target_)),
          actual(actual_) {}
    Ratio actual;
};

struct not_applicable : error {
    explicit not_applicable(const std::string& msg) : error("NotApplicable", msg) {}
};

struct not_perfect : error {
    not_perfect(const Natural& n, const Ratio& actual_)
        : error("NotPerfect", dec(n) + " is not perfect: sigma_{-1} = " + pretty(actual_)),
          actual(actual_) {}
    Ratio actual;
};

struct Representation {
    Ratio target;
    std::vector<Natural> denoms;  // nondecreasing, reciprocals sum to target

    std::size_t parts() const { return denoms.size(); }

    friend bool operator==(const Representation& a, const Representation& b) {
        return a.denoms == b.denoms && a.target == b.target;
    }
    friend bool operator<(const Representation& a, const Representation& b) {
        if (a.denoms != b.denoms)
            return std::lexicographical_compare(a.denoms.begin(), a.denoms.end(),
                                                b.denoms.begin(), b.denoms.end());
        return a.target < b.target;
    }
};

inline Ratio reciprocal_sum(const std::vector<Natural>& denoms) {
    Ratio s = 0;
    for (const auto& d : denoms) s += make_ratio(1, d);
    return s;
}

namespace detail {

// fast path for producers whose output is sorted and exact by construction
inline Representation rep_unchecked(Ratio target, std::vector<Natural> denoms) {
    return Representation{std::move(target), std::move(denoms)};
}

}  // namespace detail

inline Representation canonicalize(const Ratio& target, std::vector<Natural> denoms) {
    if (denoms.empty()) throw invalid_argument("representation needs at least one part");
    if (target <= 0) throw invalid_argument("target must be positive");
    for (const auto& d : denoms)
        if (d == 0) throw zero_denominator("zero denominator in representation");
    std::sort(denoms.begin(), denoms.end());
    Ratio s = reciprocal_sum(denoms);
    if (s != target) throw sum_mismatch(s, target);
    return Representation{target, std::move(denoms)};
}

// ---- restriction profiles ----------------------------------------------------

enum class PartsParity { any, odd, even };

struct RestrictionProfile {
    bool distinct = false;
    bool odd_only = false;
    Natural min_denominator = 1;
    PartsParity parts_parity = PartsParity::any;
    std::vector<Natural> forbid_lcm_divisible_by;

    void check() const {
        if (min_denominator < 1) throw invalid_argument("min_denominator must be >= 1");
        for (const auto& f : forbid_lcm_divisible_by)
            if (f < 2) throw invalid_argument("forbid_lcm_divisible_by entries must be >= 2");
    }
    bool parts_ok(std::size_t k) const {
        switch (parts_parity) {
            case PartsParity::odd: return k % 2 == 1;
            case PartsParity::even: return k % 2 == 0;
            default: return true;
        }
    }
};

struct Violation {
    std::string rule;
    std::optional<std::size_t> index;
    std::optional<Natural> value;
    std::string detail;
};

inline std::vector<Violation> validate(const Representation& rep, const RestrictionProfile& p) {
    p.check();
    std::vector<Violation> out;
    if (p.distinct)
        for (std::size_t i = 1; i < rep.denoms.size(); ++i)
            if (rep.denoms[i] == rep.denoms[i - 1])
                out.push_back({"distinct", i, rep.denoms[i],
                               "denominator " + dec(rep.denoms[i]) + " repeats"});
    if (p.odd_only)
        for (std::size_t i = 0; i < rep.denoms.size(); ++i)
            if (rep.denoms[i] % 2 == 0)
                out.push_back(
                    {"odd_only", i, rep.denoms[i], "denominator " + dec(rep.denoms[i]) + " is even"});
    if (p.min_denominator > 1)
        for (std::size_t i = 0; i < rep.denoms.size(); ++i)
            if (rep.denoms[i] < p.min_denominator)
                out.push_back({"min_denominator", i, rep.denoms[i],
                               "denominator " + dec(rep.denoms[i]) + " below minimum " +
                                   dec(p.min_denominator)});
    if (!p.parts_ok(rep.parts()))
        out.push_back({"parts_parity", std::nullopt, Natural(rep.parts()),
                       "part count " + std::to_string(rep.parts()) + " has wrong parity"});
    if (!p.forbid_lcm_divisible_by.empty()) {
        auto [g, l] = gcd_lcm(rep.denoms);
        for (const auto& f : p.forbid_lcm_divisible_by)
            if (mpz_divisible_p(l.get_mpz_t(), f.get_mpz_t()))
                out.push_back({"forbid_lcm_divisible_by", std::nullopt, f,
                               "lcm " + dec(l) + " divisible by " + dec(f)});
    }
    return out;
}

// ---- divisor coverage --------------------------------------------------------

struct CoverageReport {
    Natural n;  // lcm of the denominators
    std::size_t divisor_count;
    std::size_t used;
    std::vector<Natural> missing;  // divisors >= 2 of n absent from the denominators
    Ratio abundancy;               // sigma_{-1}(n)
};

inline CoverageReport coverage(const Representation& rep) {
    if (rep.target != 1) throw not_applicable("coverage requires target 1");
    for (std::size_t i = 1; i < rep.denoms.size(); ++i)
        if (rep.denoms[i] == rep.denoms[i - 1])
            throw not_applicable("coverage requires distinct denominators");
    auto [g, l] = gcd_lcm(rep.denoms);
    auto divs = divisors(l);
    CoverageReport r{l, divs.size(), rep.parts(), {}, sigma(-1, l)};
    for (const auto& d : divs) {
        if (d < 2) continue;
        if (!std::binary_search(rep.denoms.begin(), rep.denoms.end(), d)) r.missing.push_back(d);
    }
    return r;
}

inline Representation perfect_representation(const Natural& n) {
    if (n == 0) throw invalid_argument("perfect_representation(0)");
    Ratio a = sigma(-1, n);
    if (a != 2) throw not_perfect(n, a);
    auto divs = divisors(n);
    std::vector<Natural> denoms(divs.begin() + 1, divs.end());  // every divisor but 1
    return canonicalize(Ratio(1), std::move(denoms));
}

}  // namespace egypt
