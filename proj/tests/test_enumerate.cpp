#include <egypt/enumerate.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace egypt;

static std::vector<std::vector<Natural>> denom_lists(const EnumerationResult& r) {
    std::vector<std::vector<Natural>> out;
    for (const auto& rep : r.reps) out.push_back(rep.denoms);
    return out;
}

TEST_CASE("enumerate: unit target, small part counts") {
    auto r1 = enumerate_reps(Ratio(1), 1);
    CHECK(denom_lists(r1) == std::vector<std::vector<Natural>>{{1}});
    CHECK(r1.complete);
    CHECK(r1.count == 1);

    auto r2 = enumerate_reps(Ratio(1), 2);
    CHECK(denom_lists(r2) == std::vector<std::vector<Natural>>{{2, 2}});

    auto r3 = enumerate_reps(Ratio(1), 3);
    CHECK(denom_lists(r3) ==
          std::vector<std::vector<Natural>>{{2, 3, 6}, {2, 4, 4}, {3, 3, 3}});
    CHECK(r3.count == 3);
}

TEST_CASE("enumerate: 1/6 into two parts") {
    auto r = enumerate_reps(make_ratio(1, 6), 2);
    CHECK(denom_lists(r) == std::vector<std::vector<Natural>>{
                                {7, 42}, {8, 24}, {9, 18}, {10, 15}, {12, 12}});
    CHECK(r.complete);
}

TEST_CASE("enumerate: known counts") {
    CHECK(count_reps(Ratio(1), 4).count == 14);
    CHECK(count_reps(Ratio(1), 5).count == 147);
    auto e4 = enumerate_reps(Ratio(1), 4);
    CHECK(e4.count == 14);
    CHECK(e4.reps.size() == 14);
    CHECK(std::is_sorted(e4.reps.begin(), e4.reps.end()));
}

TEST_CASE("enumerate: profiles restrict the set") {
    RestrictionProfile distinct{.distinct = true};
    CHECK(denom_lists(enumerate_reps(Ratio(1), 3, distinct)) ==
          std::vector<std::vector<Natural>>{{2, 3, 6}});

    RestrictionProfile odd{.odd_only = true};
    CHECK(denom_lists(enumerate_reps(Ratio(1), 3, odd)) ==
          std::vector<std::vector<Natural>>{{3, 3, 3}});

    RestrictionProfile min3{.min_denominator = 3};
    CHECK(denom_lists(enumerate_reps(Ratio(1), 3, min3)) ==
          std::vector<std::vector<Natural>>{{3, 3, 3}});

    RestrictionProfile forb{.forbid_lcm_divisible_by = {Natural(4)}};
    CHECK(denom_lists(enumerate_reps(Ratio(1), 3, forb)) ==
          std::vector<std::vector<Natural>>{{2, 3, 6}, {3, 3, 3}});

    RestrictionProfile shiu{.distinct = true,
                            .odd_only = true,
                            .min_denominator = 3,
                            .parts_parity = PartsParity::odd};
    CHECK(enumerate_reps(Ratio(1), 3, shiu).reps.empty());
    CHECK(enumerate_reps(Ratio(1), 3, shiu).complete);
}

TEST_CASE("enumerate: parts parity handled on k itself") {
    RestrictionProfile even{.parts_parity = PartsParity::even};
    auto r = enumerate_reps(Ratio(1), 3, even);
    CHECK(r.reps.empty());
    CHECK(r.complete);
    CHECK(r.nodes_visited == 0);

    RestrictionProfile oddp{.parts_parity = PartsParity::odd};
    CHECK(enumerate_reps(Ratio(1), 3, oddp).count == 3);
}

TEST_CASE("enumerate: odd profile kills even part counts cheaply") {
    RestrictionProfile odd{.odd_only = true};
    auto r = count_reps(Ratio(1), 4, odd);
    CHECK(r.count == 0);
    CHECK(r.complete);
    CHECK(r.nodes_visited <= 2);  // the root is parity-dead
}

TEST_CASE("enumerate: general targets") {
    auto two = enumerate_reps(Ratio(2), 2);
    CHECK(denom_lists(two) == std::vector<std::vector<Natural>>{{1, 1}});

    auto tq = enumerate_reps(make_ratio(3, 4), 2);
    CHECK(denom_lists(tq) == std::vector<std::vector<Natural>>{{2, 4}});

    auto half = enumerate_reps(make_ratio(1, 2), 2);
    CHECK(denom_lists(half) == std::vector<std::vector<Natural>>{{3, 6}, {4, 4}});

    CHECK_THROWS_AS(enumerate_reps(Ratio(0), 2), invalid_argument);
    CHECK_THROWS_AS(enumerate_reps(Ratio(1), 0), invalid_argument);
}

TEST_CASE("oracle: equivalence with the pruned search") {
    std::vector<RestrictionProfile> profiles;
    profiles.push_back({});
    profiles.push_back({.distinct = true});
    profiles.push_back({.odd_only = true});
    profiles.push_back({.distinct = true, .odd_only = true, .min_denominator = 3});
    profiles.push_back({.forbid_lcm_divisible_by = {Natural(4)}});

    for (unsigned long u = 1; u <= 6; ++u) {
        for (std::size_t k = 1; k <= 4; ++k) {
            for (const auto& p : profiles) {
                auto fast = enumerate_reps(make_ratio(1, u), k, p);
                auto slow = naive_oracle(make_ratio(1, u), k, p);
                INFO("u=" << u << " k=" << k);
                CHECK(fast.reps == slow.reps);
                CHECK(fast.count == slow.count);
                CHECK(fast.complete);
                CHECK(slow.complete);
            }
        }
    }
}

TEST_CASE("oracle: non-unit targets and guards") {
    auto a = naive_oracle(make_ratio(5, 6), 3);
    auto b = enumerate_reps(make_ratio(5, 6), 3);
    CHECK(a.reps == b.reps);
    CHECK(naive_oracle(Ratio(1), 1).count == 1);
    CHECK_THROWS_AS(naive_oracle(Ratio(1), 6), invalid_argument);
    CHECK_THROWS_AS(naive_oracle(Ratio(1), 0), invalid_argument);
}

TEST_CASE("bounds: max_denominator clips and flags") {
    SearchBounds b;
    b.max_denominator = Natural(20);
    auto r = enumerate_reps(make_ratio(1, 6), 2, {}, b);
    CHECK(denom_lists(r) == std::vector<std::vector<Natural>>{{9, 18}, {10, 15}, {12, 12}});
    CHECK_FALSE(r.complete);

    SearchBounds loose;
    loose.max_denominator = Natural(100);
    auto full = enumerate_reps(make_ratio(1, 6), 2, {}, loose);
    CHECK(full.count == 5);
    CHECK(full.complete);  // cap above every denominator: nothing clipped
}

TEST_CASE("bounds: max_results truncates in order") {
    SearchBounds b;
    b.max_results = 2;
    auto r = enumerate_reps(make_ratio(1, 6), 2, {}, b);
    CHECK(denom_lists(r) == std::vector<std::vector<Natural>>{{7, 42}, {8, 24}});
    CHECK_FALSE(r.complete);
    CHECK(r.count == 2);

    SearchBounds enough;
    enough.max_results = 5;
    CHECK(enumerate_reps(make_ratio(1, 6), 2, {}, enough).complete);
}

TEST_CASE("bounds: node budget aborts without throwing") {
    SearchBounds b;
    b.node_budget = 1;
    auto r = count_reps(Ratio(1), 5, {}, b);
    CHECK_FALSE(r.complete);

    SearchBounds big;
    big.node_budget = 100000000;
    CHECK(count_reps(Ratio(1), 4, {}, big).complete);
}

TEST_CASE("parallel: identical results at any degree") {
    for (unsigned par : {2u, 4u, 8u}) {
        auto seq = enumerate_reps(Ratio(1), 5);
        auto parr = enumerate_reps(Ratio(1), 5, {}, {}, par);
        CHECK(seq.reps == parr.reps);
        CHECK(seq.count == parr.count);
        CHECK(parr.complete);
    }
    RestrictionProfile odd{.distinct = true, .odd_only = true, .min_denominator = 3};
    auto seq = enumerate_reps(Ratio(1), 5, odd);
    auto parr = enumerate_reps(Ratio(1), 5, odd, {}, 4);
    CHECK(seq.reps == parr.reps);
}

TEST_CASE("probe: counters move") {
    SearchProbe probe;
    auto r = enumerate_reps(Ratio(1), 4, {}, {}, 1, &probe);
    CHECK(probe.nodes.load() == r.nodes_visited);
    CHECK(probe.found.load() == r.count);
}

TEST_CASE("two-part solve agrees with plain loop on wide ranges") {
    // 1/u with k=2 and large u forces the divisor path; compare with oracle
    for (unsigned long u : {30ul, 36ul, 60ul, 100ul, 210ul}) {
        auto fast = enumerate_reps(make_ratio(1, u), 2);
        auto slow = naive_oracle(make_ratio(1, u), 2);
        INFO("u=" << u);
        CHECK(fast.reps == slow.reps);
        CHECK(fast.count == Natural(divisors(u * u).size() + 1) / 2);
    }
    RestrictionProfile d{.distinct = true};
    for (unsigned long u : {36ul, 100ul}) {
        auto fast = enumerate_reps(make_ratio(1, u), 2, d);
        auto slow = naive_oracle(make_ratio(1, u), 2, d);
        CHECK(fast.reps == slow.reps);
    }
}

TEST_CASE("every result is exact and profile-clean") {
    RestrictionProfile p{.distinct = true};
    auto r = enumerate_reps(make_ratio(2, 9), 3, p);
    CHECK(r.complete);
    CHECK(!r.reps.empty());
    for (const auto& rep : r.reps) {
        CHECK(reciprocal_sum(rep.denoms) == make_ratio(2, 9));
        CHECK(std::is_sorted(rep.denoms.begin(), rep.denoms.end()));
        CHECK(validate(rep, p).empty());
    }
}
