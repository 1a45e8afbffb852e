#pragma once

// Exhaustive search for unit-fraction representations. Depth-first over
// nondecreasing denominator choices with interval bounds at every level, a
// divisor-pair solve once exactly two parts remain, and parity cuts when the
// profile admits only odd denominators. Exact arithmetic throughout.

#include <egypt/repr.hpp>

#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace egypt {

struct SearchBounds {
    std::optional<Natural> max_denominator;
    std::optional<std::uint64_t> max_results;
    std::optional<std::uint64_t> node_budget;
};

// live progress counters, safe to poll from another thread
struct SearchProbe {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> found{0};
    std::atomic<std::uint64_t> depth{0};
};

struct EnumerationResult {
    std::vector<Representation> reps;
    std::uint64_t count = 0;
    bool complete = true;  // false when a budget, result cap or denominator cap cut the search
    std::uint64_t nodes_visited = 0;
};

struct CountResult {
    std::uint64_t count = 0;
    bool complete = true;
    std::uint64_t nodes_visited = 0;
};

namespace detail {

constexpr std::uint64_t NODE_FLUSH = 1024;
constexpr long M2_DIVISOR_THRESHOLD = 64;

struct SearchShared {
    const RestrictionProfile* profile;
    Ratio target;
    bool materialize = true;
    bool has_maxd = false;
    Natural maxd;
    std::uint64_t max_results = UINT64_MAX;
    bool has_budget = false;
    std::atomic<std::int64_t> budget{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> clipped{false};
    SearchProbe* probe = nullptr;
};

struct Frame {
    std::size_t m;  // parts still to choose
    Natural lo;     // least admissible next denominator
    Natural a, b;   // remaining target a/b, reduced
    Natural lcm;    // lcm of the chosen prefix
    std::vector<Natural> path;
};

// remaining-range bounds for a node with m >= 2 parts left; nullopt = dead node
inline std::optional<std::pair<Natural, Natural>> level_bounds(SearchShared& sh, std::size_t m,
                                                               const Natural& lo, const Natural& a,
                                                               const Natural& b) {
    Natural vmin = b / a + 1;
    if (vmin < lo) vmin = lo;
    if (sh.profile->odd_only && mpz_even_p(vmin.get_mpz_t())) ++vmin;
    Natural vmax = (Natural(m) * b) / a;
    if (sh.has_maxd && vmax > sh.maxd) {
        if (vmin <= vmax) sh.clipped.store(true, std::memory_order_relaxed);
        vmax = sh.maxd;
    }
    if (vmax < vmin) return std::nullopt;
    return std::make_pair(std::move(vmin), std::move(vmax));
}

// parity cut: a sum of m odd-denominator unit fractions reduces to numerator
// congruent to m mod 2 over an odd denominator
inline bool parity_dead(const SearchShared& sh, std::size_t m, const Natural& a, const Natural& b) {
    if (!sh.profile->odd_only) return false;
    if (mpz_even_p(b.get_mpz_t())) return true;
    return (mpz_odd_p(a.get_mpz_t()) != 0) != (m % 2 == 1);
}

inline bool lcm_forbidden(const RestrictionProfile& p, const Natural& l) {
    for (const auto& f : p.forbid_lcm_divisible_by)
        if (mpz_divisible_p(l.get_mpz_t(), f.get_mpz_t())) return true;
    return false;
}

struct Walker {
    SearchShared& sh;
    std::vector<Representation> reps;
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
    std::uint64_t pending = 0;
    bool truncated = false;
    std::vector<Natural> path;

    explicit Walker(SearchShared& s) : sh(s) {}

    bool flush() {
        if (sh.has_budget && pending) {
            auto left = sh.budget.fetch_sub(std::int64_t(pending), std::memory_order_relaxed) -
                        std::int64_t(pending);
            if (left < 0) sh.stop.store(true, std::memory_order_relaxed);
        }
        if (sh.probe && pending) {
            sh.probe->nodes.fetch_add(pending, std::memory_order_relaxed);
            sh.probe->depth.store(path.size(), std::memory_order_relaxed);
        }
        pending = 0;
        return !sh.stop.load(std::memory_order_relaxed);
    }

    bool tick() {
        ++nodes;
        if (++pending >= NODE_FLUSH) return flush();
        return !sh.stop.load(std::memory_order_relaxed);
    }

    bool emit_pair(const Natural& x, const Natural& y) {
        path.push_back(x);
        path.push_back(y);
        bool cont = emit();
        path.pop_back();
        path.pop_back();
        return cont;
    }

    bool emit() {
        ++count;
        if (sh.probe) sh.probe->found.fetch_add(1, std::memory_order_relaxed);
        if (count > sh.max_results) {
            truncated = true;
            return false;
        }
        if (sh.materialize) reps.push_back(rep_unchecked(sh.target, path));
        return true;
    }

    bool dfs(std::size_t m, const Natural& lo, const Natural& a, const Natural& b,
             const Natural& lcm_) {
        if (!tick()) return false;
        if (parity_dead(sh, m, a, b)) return true;
        if (m == 1) {
            if (a != 1 || b < lo) return true;
            if (sh.has_maxd && b > sh.maxd) {
                sh.clipped.store(true, std::memory_order_relaxed);
                return true;
            }
            if (!sh.profile->forbid_lcm_divisible_by.empty()) {
                Natural l;
                mpz_lcm(l.get_mpz_t(), lcm_.get_mpz_t(), b.get_mpz_t());
                if (lcm_forbidden(*sh.profile, l)) return true;
            }
            path.push_back(b);
            bool cont = emit();
            path.pop_back();
            return cont;
        }
        auto bounds = level_bounds(sh, m, lo, a, b);
        if (!bounds) return true;
        auto& [vmin, vmax] = *bounds;
        if (m == 2 && vmax - vmin > M2_DIVISOR_THRESHOLD) return two_part_solve(vmin, a, b, lcm_);
        const unsigned step = sh.profile->odd_only ? 2 : 1;
        const bool track_lcm = !sh.profile->forbid_lcm_divisible_by.empty();
        for (Natural v = vmin; v <= vmax; v += step) {
            Natural na = a * v - b;
            Natural nb = b * v;
            Natural g;
            mpz_gcd(g.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
            if (g > 1) {
                mpz_divexact(na.get_mpz_t(), na.get_mpz_t(), g.get_mpz_t());
                mpz_divexact(nb.get_mpz_t(), nb.get_mpz_t(), g.get_mpz_t());
            }
            Natural nlcm = lcm_;
            if (track_lcm) {
                mpz_lcm(nlcm.get_mpz_t(), lcm_.get_mpz_t(), v.get_mpz_t());
                if (lcm_forbidden(*sh.profile, nlcm)) continue;
            }
            Natural nlo = sh.profile->distinct ? Natural(v + step) : v;
            path.push_back(v);
            bool cont = dfs(m - 1, nlo, na, nb, nlcm);
            path.pop_back();
            if (!cont) return false;
        }
        return true;
    }

    // 1/x + 1/y = a/b with x <= y  <=>  (ax-b)(ay-b) = b^2; walk divisors P <= b
    bool two_part_solve(const Natural& lo, const Natural& a, const Natural& b,
                        const Natural& lcm_) {
        auto fs = factorize(b);
        std::vector<Natural> ps{1};
        for (const auto& [p, e] : fs) {
            std::size_t base = ps.size();
            Natural pk = 1;
            for (unsigned i = 0; i < 2 * e; ++i) {
                pk *= p;
                for (std::size_t j = 0; j < base; ++j) {
                    Natural cand = ps[j] * pk;
                    if (cand <= b) ps.push_back(std::move(cand));  // larger cofactor never needed
                }
            }
        }
        std::sort(ps.begin(), ps.end());
        const bool odd = sh.profile->odd_only;
        const bool track_lcm = !sh.profile->forbid_lcm_divisible_by.empty();
        const Natural bb = b * b;
        for (const auto& P : ps) {
            Natural xa = P + b;
            if (!mpz_divisible_p(xa.get_mpz_t(), a.get_mpz_t())) continue;
            Natural x = xa / a;
            if (x < lo) continue;
            if (odd && mpz_even_p(x.get_mpz_t())) continue;
            Natural ya = bb / P + b;
            if (!mpz_divisible_p(ya.get_mpz_t(), a.get_mpz_t())) continue;
            Natural y = ya / a;
            if (odd && mpz_even_p(y.get_mpz_t())) continue;
            if (sh.profile->distinct && x == y) continue;
            if (sh.has_maxd && y > sh.maxd) {
                sh.clipped.store(true, std::memory_order_relaxed);
                continue;
            }
            if (track_lcm) {
                Natural l;
                mpz_lcm(l.get_mpz_t(), lcm_.get_mpz_t(), x.get_mpz_t());
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), y.get_mpz_t());
                if (lcm_forbidden(*sh.profile, l)) continue;
            }
            if (!emit_pair(x, y)) return false;
        }
        return true;
    }
};

// breadth-first split of the top of the tree into independent ordered tasks;
// frames handed out as tasks are not counted here — the worker that runs one
// counts it on entry, so totals match a sequential walk exactly
inline void expand_tasks(SearchShared& sh, const Frame& f, unsigned depth_left,
                         std::vector<Frame>& out, std::uint64_t& nodes) {
    if (depth_left == 0 || f.m <= 2) {
        out.push_back(f);
        return;
    }
    ++nodes;
    if (parity_dead(sh, f.m, f.a, f.b)) return;
    auto bounds = level_bounds(sh, f.m, f.lo, f.a, f.b);
    if (!bounds) return;
    auto& [vmin, vmax] = *bounds;
    const unsigned step = sh.profile->odd_only ? 2 : 1;
    const bool track_lcm = !sh.profile->forbid_lcm_divisible_by.empty();
    for (Natural v = vmin; v <= vmax; v += step) {
        Natural na = f.a * v - f.b;
        Natural nb = f.b * v;
        Natural g;
        mpz_gcd(g.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
        if (g > 1) {
            mpz_divexact(na.get_mpz_t(), na.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(nb.get_mpz_t(), nb.get_mpz_t(), g.get_mpz_t());
        }
        Natural nlcm = f.lcm;
        if (track_lcm) {
            mpz_lcm(nlcm.get_mpz_t(), f.lcm.get_mpz_t(), v.get_mpz_t());
            if (lcm_forbidden(*sh.profile, nlcm)) continue;
        }
        Frame child;
        child.m = f.m - 1;
        child.lo = sh.profile->distinct ? Natural(v + step) : v;
        child.a = std::move(na);
        child.b = std::move(nb);
        child.lcm = std::move(nlcm);
        child.path = f.path;
        child.path.push_back(v);
        expand_tasks(sh, child, depth_left - 1, out, nodes);
    }
}

inline EnumerationResult run_search(const Ratio& target, std::size_t k,
                                    const RestrictionProfile& profile, const SearchBounds& bounds,
                                    unsigned parallelism, SearchProbe* probe, bool materialize) {
    profile.check();
    if (k == 0) throw invalid_argument("part count must be >= 1");
    if (target <= 0) throw invalid_argument("target must be positive");
    if (parallelism == 0) parallelism = 1;

    EnumerationResult out;
    if (!profile.parts_ok(k)) return out;  // no k-part list can satisfy the parity

    SearchShared sh;
    sh.profile = &profile;
    sh.target = target;
    sh.materialize = materialize;
    if (bounds.max_denominator) {
        sh.has_maxd = true;
        sh.maxd = *bounds.max_denominator;
    }
    if (bounds.max_results) sh.max_results = *bounds.max_results;
    if (bounds.node_budget) {
        sh.has_budget = true;
        sh.budget.store(std::int64_t(std::min<std::uint64_t>(*bounds.node_budget, INT64_MAX)),
                        std::memory_order_relaxed);
    }
    sh.probe = probe;

    Frame root;
    root.m = k;
    root.lo = std::max(Natural(1), profile.min_denominator);
    root.a = Natural(target.get_num());
    root.b = Natural(target.get_den());
    root.lcm = 1;

    bool truncated = false;
    if (parallelism == 1 || k < 3) {
        Walker w(sh);
        w.dfs(root.m, root.lo, root.a, root.b, root.lcm);
        w.flush();
        out.reps = std::move(w.reps);
        out.count = w.count;
        out.nodes_visited = w.nodes;
        truncated = w.truncated;
    } else {
        std::vector<Frame> tasks;
        std::uint64_t expand_nodes = 0;
        expand_tasks(sh, root, 2, tasks, expand_nodes);
        out.nodes_visited = expand_nodes;
        if (sh.has_budget) sh.budget.fetch_sub(std::int64_t(expand_nodes));

        struct TaskOut {
            std::vector<Representation> reps;
            std::uint64_t count = 0, nodes = 0;
            bool truncated = false;
        };
        std::vector<TaskOut> outs(tasks.size());
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= tasks.size()) return;
                if (sh.stop.load(std::memory_order_relaxed)) continue;  // budget gone; skip rest
                Walker w(sh);
                w.path = tasks[i].path;
                w.dfs(tasks[i].m, tasks[i].lo, tasks[i].a, tasks[i].b, tasks[i].lcm);
                w.flush();
                outs[i] = {std::move(w.reps), w.count, w.nodes, w.truncated};
            }
        };
        std::vector<std::thread> pool;
        unsigned nthreads = std::min<std::size_t>(parallelism, std::max<std::size_t>(tasks.size(), 1));
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        for (auto& t : outs) {
            out.count += t.count;
            out.nodes_visited += t.nodes;
            truncated = truncated || t.truncated;
            for (auto& r : t.reps) out.reps.push_back(std::move(r));
        }
    }

    bool budget_hit = sh.stop.load(std::memory_order_relaxed);
    bool clipped = sh.clipped.load(std::memory_order_relaxed);
    if (out.count > sh.max_results) {
        truncated = true;
        out.count = sh.max_results;
        if (materialize && out.reps.size() > sh.max_results) out.reps.resize(sh.max_results);
    }
    out.complete = !budget_hit && !clipped && !truncated;
    return out;
}

}  // namespace detail

inline EnumerationResult enumerate_reps(const Ratio& target, std::size_t k,
                                        const RestrictionProfile& profile = {},
                                        const SearchBounds& bounds = {}, unsigned parallelism = 1,
                                        SearchProbe* probe = nullptr) {
    return detail::run_search(target, k, profile, bounds, parallelism, probe, true);
}

inline CountResult count_reps(const Ratio& target, std::size_t k,
                              const RestrictionProfile& profile = {},
                              const SearchBounds& bounds = {}, unsigned parallelism = 1,
                              SearchProbe* probe = nullptr) {
    auto r = detail::run_search(target, k, profile, bounds, parallelism, probe, false);
    return {r.count, r.complete, r.nodes_visited};
}

// Independent reference enumerator: plain nested loops, no interval pruning
// beyond the loop ranges, no divisor solve; the profile is applied by
// validate() on each exact-sum candidate. Deliberately slow, small k only.
inline EnumerationResult naive_oracle(const Ratio& target, std::size_t k,
                                      const RestrictionProfile& profile = {}) {
    profile.check();
    if (k == 0 || k > 5) throw invalid_argument("naive_oracle handles 1 <= k <= 5");
    if (target <= 0) throw invalid_argument("target must be positive");

    EnumerationResult out;
    if (!profile.parts_ok(k)) return out;

    std::vector<Natural> path;
    Natural lo0 = std::max(Natural(1), profile.min_denominator);

    auto leaf = [&](const Ratio& r, const Natural& lo) {
        ++out.nodes_visited;
        if (r.get_num() != 1 || r.get_den() < lo) return;
        path.push_back(Natural(r.get_den()));
        Representation cand = detail::rep_unchecked(target, path);
        if (validate(cand, profile).empty()) {
            ++out.count;
            out.reps.push_back(std::move(cand));
        }
        path.pop_back();
    };

    auto rec = [&](auto&& self, std::size_t m, const Natural& lo, const Ratio& r) -> void {
        ++out.nodes_visited;
        if (m == 1) {
            leaf(r, lo);
            return;
        }
        Natural vmax = (Natural(m) * r.get_den()) / r.get_num();
        for (Natural v = lo; v <= vmax; ++v) {
            Ratio rest = r - make_ratio(1, v);
            if (rest <= 0) continue;
            path.push_back(v);
            self(self, m - 1, v, rest);
            path.pop_back();
        }
    };

    rec(rec, k, lo0, target);
    out.complete = true;
    return out;
}

}  // namespace egypt
