#pragma once

// Structure-preserving moves on representations: the divisor split
//   1/u = 1/(u+d) + 1/((u/d)(u+d))        for d | u   (gamma)
// and the two-part exchange
//   1/s + 1/(rs) = 1/(qr) + 1/(qs)        with r = q+d, s = qr-d,
//                                         q > 1 odd, d > 0 even   (o)
// plus the first-part tree, reachability closures and gap detection
// built on top of them.

#include <egypt/enumerate.hpp>

#include <deque>
#include <map>
#include <set>
#include <variant>

namespace egypt {

struct non_divisor : error {
    non_divisor(const Natural& d, const Natural& u)
        : error("NonDivisor", dec(d) + " does not divide " + dec(u)) {}
};

struct index_out_of_range : error {
    explicit index_out_of_range(const std::string& msg) : error("IndexOutOfRange", msg) {}
};

struct precondition_parity : error {
    explicit precondition_parity(const std::string& msg) : error("PreconditionParity", msg) {}
};

struct pattern_absent : error {
    explicit pattern_absent(const std::string& msg) : error("PatternAbsent", msg) {}
};

struct budget_exceeded : error {
    explicit budget_exceeded(const std::string& msg) : error("BudgetExceeded", msg) {}
};

// ---- gamma -------------------------------------------------------------------

struct GammaChoice {
    std::size_t part_index;
    Natural d;
    friend bool operator==(const GammaChoice&, const GammaChoice&) = default;
};

inline Representation gamma_split(const Representation& rep, const GammaChoice& c) {
    if (c.part_index >= rep.parts())
        throw index_out_of_range("part index " + std::to_string(c.part_index) + " in a " +
                                 std::to_string(rep.parts()) + "-part representation");
    const Natural& u = rep.denoms[c.part_index];
    if (c.d == 0 || !mpz_divisible_p(u.get_mpz_t(), c.d.get_mpz_t())) throw non_divisor(c.d, u);
    std::vector<Natural> ds = rep.denoms;
    Natural up = u + c.d;
    ds[c.part_index] = up;
    ds.push_back((u / c.d) * up);
    std::sort(ds.begin(), ds.end());
    return detail::rep_unchecked(rep.target, std::move(ds));
}

// one child per divisor of the chosen part, ascending d
inline std::vector<Representation> gamma_children(const Representation& rep,
                                                  std::size_t part_index) {
    if (part_index >= rep.parts())
        throw index_out_of_range("part index " + std::to_string(part_index) + " in a " +
                                 std::to_string(rep.parts()) + "-part representation");
    std::vector<Representation> out;
    for (const auto& d : divisors(rep.denoms[part_index]))
        out.push_back(gamma_split(rep, {part_index, d}));
    return out;
}

// ---- o -------------------------------------------------------------------------

struct OParams {
    Natural q, d;

    Natural r() const { return q + d; }
    Natural s() const { return q * (q + d) - d; }

    void check() const {
        if (q <= 1 || mpz_even_p(q.get_mpz_t()))
            throw precondition_parity("q must be odd and greater than 1, got " + dec(q));
        if (d == 0 || mpz_odd_p(d.get_mpz_t()))
            throw precondition_parity("d must be even and greater than 0, got " + dec(d));
    }
    friend bool operator==(const OParams&, const OParams&) = default;
};

inline Representation o_swap(const Representation& rep, const OParams& p,
                             std::optional<std::size_t> pair_index = std::nullopt) {
    p.check();
    Natural s = p.s(), rs = p.r() * p.s();
    auto count_of = [&](const Natural& v) {
        auto [first, last] = std::equal_range(rep.denoms.begin(), rep.denoms.end(), v);
        return std::size_t(last - first);
    };
    std::size_t ns = count_of(s), nrs = count_of(rs);
    if (ns == 0 || nrs == 0)
        throw pattern_absent("no (" + dec(s) + ", " + dec(rs) + ") pair in representation");
    std::size_t pairs = ns * nrs;
    std::size_t idx = pair_index.value_or(0);
    if (idx >= pairs)
        throw index_out_of_range("pair index " + std::to_string(idx) + " of " +
                                 std::to_string(pairs));
    // every copy of s and rs is interchangeable: any pair choice gives the
    // same canonical result, so the index only needs bounds checking
    std::vector<Natural> ds = rep.denoms;
    ds.erase(std::find(ds.begin(), ds.end(), s));
    ds.erase(std::find(ds.begin(), ds.end(), rs));
    ds.push_back(p.q * p.r());
    ds.push_back(p.q * s);
    std::sort(ds.begin(), ds.end());
    return detail::rep_unchecked(rep.target, std::move(ds));
}

// all o-parameter choices applicable to rep, ascending by the (s, rs) pair
inline std::vector<OParams> o_candidates(const Representation& rep) {
    std::vector<OParams> out;
    std::set<std::pair<Natural, Natural>> seen;
    for (std::size_t i = 0; i < rep.parts(); ++i) {
        for (std::size_t j = 0; j < rep.parts(); ++j) {
            if (i == j) continue;
            const Natural& x = rep.denoms[i];  // candidate s
            const Natural& y = rep.denoms[j];  // candidate rs
            if (!mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) continue;
            Natural r = y / x;
            if (r < 2) continue;
            Natural qnum = x + r;
            Natural rp1 = r + 1;
            if (!mpz_divisible_p(qnum.get_mpz_t(), rp1.get_mpz_t())) continue;
            Natural q = qnum / rp1;
            if (q <= 1 || mpz_even_p(q.get_mpz_t())) continue;
            Natural d = r - q;
            if (d <= 0 || mpz_odd_p(d.get_mpz_t())) continue;
            if (!seen.emplace(x, y).second) continue;
            out.push_back({std::move(q), std::move(d)});
        }
    }
    return out;
}

// ---- first-part tree -----------------------------------------------------------

struct FirstPartTreeNode {
    Natural active;             // the part the next stage splits
    std::vector<Natural> tail;  // parts set aside so far
    std::size_t parent;         // index into the previous level
};

struct FirstPartTree {
    Natural root;
    std::vector<std::vector<FirstPartTreeNode>> levels;  // levels[i] = stage i nodes
};

struct FirstPartTreeResult {
    FirstPartTree tree;
    std::vector<Representation> stage_reps;  // one per leaf, canonicalized
    std::uint64_t s_k = 0;                   // raw leaf count
    std::uint64_t duplicates = 0;            // collisions among canonical leaves
};

inline std::uint64_t duplicate_count(const std::vector<Representation>& reps) {
    std::set<Representation> uniq(reps.begin(), reps.end());
    return reps.size() - uniq.size();
}

inline FirstPartTreeResult first_part_tree(const Natural& u, std::size_t k) {
    if (u == 0) throw invalid_argument("root denominator must be >= 1");
    if (k == 0) throw invalid_argument("stage count must be >= 1");
    FirstPartTree tree;
    tree.root = u;
    tree.levels.push_back({{u, {}, std::size_t(-1)}});
    for (std::size_t stage = 1; stage < k; ++stage) {
        const auto& prev = tree.levels.back();
        std::vector<FirstPartTreeNode> next;
        for (std::size_t pi = 0; pi < prev.size(); ++pi) {
            const auto& node = prev[pi];
            for (const auto& d : divisors(node.active)) {
                FirstPartTreeNode child;
                child.active = node.active + d;
                child.tail = node.tail;
                child.tail.push_back((node.active / d) * child.active);
                child.parent = pi;
                next.push_back(std::move(child));
            }
        }
        tree.levels.push_back(std::move(next));
    }
    FirstPartTreeResult res;
    Ratio target = make_ratio(1, u);
    for (const auto& leaf : tree.levels.back()) {
        std::vector<Natural> ds = leaf.tail;
        ds.push_back(leaf.active);
        std::sort(ds.begin(), ds.end());
        res.stage_reps.push_back(detail::rep_unchecked(target, std::move(ds)));
    }
    res.s_k = res.stage_reps.size();
    res.duplicates = duplicate_count(res.stage_reps);
    res.tree = std::move(tree);
    return res;
}

// leaf count of the first-part tree without materializing it:
// s(2) = sigma_0(u), s(k) = sum over d | f of s at (f + d) with one stage less
inline Natural lower_bound_s(const Natural& u, std::size_t k) {
    if (u == 0) throw invalid_argument("root denominator must be >= 1");
    if (k == 0) throw invalid_argument("stage count must be >= 1");
    std::map<std::pair<Natural, std::size_t>, Natural> memo;
    auto rec = [&](auto&& self, const Natural& f, std::size_t stages) -> Natural {
        if (stages == 0) return 1;
        auto key = std::make_pair(f, stages);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Natural total = 0;
        for (const auto& d : divisors(f)) total += self(self, f + d, stages - 1);
        memo.emplace(std::move(key), total);
        return total;
    };
    return rec(rec, u, k - 1);
}

// ---- closure --------------------------------------------------------------------

struct OperatorSet {
    bool gamma = true;
    bool o = false;
};

struct ClosureLimits {
    std::optional<std::size_t> max_depth;
    std::optional<std::size_t> max_parts;
    std::optional<std::uint64_t> node_budget;  // counts operator applications
};

struct OperatorApplication {
    std::variant<GammaChoice, OParams> params;
    Representation from, to;

    bool is_gamma() const { return std::holds_alternative<GammaChoice>(params); }
};

inline bool edge_less(const OperatorApplication& a, const OperatorApplication& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    if (a.is_gamma() != b.is_gamma()) return a.is_gamma();
    if (a.is_gamma()) {
        const auto &ga = std::get<GammaChoice>(a.params), &gb = std::get<GammaChoice>(b.params);
        if (ga.part_index != gb.part_index) return ga.part_index < gb.part_index;
        return ga.d < gb.d;
    }
    const auto &oa = std::get<OParams>(a.params), &ob = std::get<OParams>(b.params);
    if (oa.q != ob.q) return oa.q < ob.q;
    return oa.d < ob.d;
}

struct ClosureResult {
    std::vector<Representation> reachable;       // sorted, includes the seed
    std::vector<OperatorApplication> edges;      // every application, sorted
    bool frontier_exhausted = true;              // false only on budget stop
    std::uint64_t duplicates_detected = 0;       // applications that re-derived a known rep
    std::uint64_t applications = 0;
};

inline ClosureResult closure(const Representation& seed, const OperatorSet& ops,
                             const ClosureLimits& limits) {
    if (!limits.max_depth && !limits.max_parts && !limits.node_budget)
        throw invalid_argument("closure needs at least one limit");
    ClosureResult res;
    std::set<Representation> visited{seed};
    std::deque<std::pair<Representation, std::size_t>> queue{{seed, 0}};
    std::uint64_t budget = limits.node_budget.value_or(UINT64_MAX);

    auto offer = [&](OperatorApplication&& edge, std::size_t depth) {
        if (visited.insert(edge.to).second)
            queue.emplace_back(edge.to, depth + 1);
        else
            ++res.duplicates_detected;
        res.edges.push_back(std::move(edge));
    };

    while (!queue.empty()) {
        auto [rep, depth] = std::move(queue.front());
        queue.pop_front();
        if (limits.max_depth && depth >= *limits.max_depth) continue;
        if (ops.gamma && (!limits.max_parts || rep.parts() < *limits.max_parts)) {
            for (std::size_t i = 0; i < rep.parts() && res.frontier_exhausted; ++i) {
                for (const auto& d : divisors(rep.denoms[i])) {
                    if (res.applications >= budget) {
                        res.frontier_exhausted = false;
                        break;
                    }
                    ++res.applications;
                    GammaChoice c{i, d};
                    offer({c, rep, gamma_split(rep, c)}, depth);
                }
            }
        }
        if (ops.o && res.frontier_exhausted) {
            for (const auto& p : o_candidates(rep)) {
                if (res.applications >= budget) {
                    res.frontier_exhausted = false;
                    break;
                }
                ++res.applications;
                offer({p, rep, o_swap(rep, p)}, depth);
            }
        }
        if (!res.frontier_exhausted) break;
    }
    res.reachable.assign(visited.begin(), visited.end());
    std::sort(res.edges.begin(), res.edges.end(), edge_less);
    return res;
}

// ---- gaps -----------------------------------------------------------------------

struct GapResult {
    std::vector<Representation> unreachable;  // S_u(k) members no operator path hits
    bool enumeration_complete = true;
    bool closure_exhausted = true;
};

inline GapResult find_unreachable(const Natural& u, std::size_t k, const OperatorSet& ops,
                                  ClosureLimits limits = {}) {
    if (u == 0) throw invalid_argument("u must be >= 1");
    if (k == 0) throw invalid_argument("k must be >= 1");
    // parts never shrink, so anything past k parts cannot come back
    limits.max_parts = std::min<std::size_t>(limits.max_parts.value_or(k), k);
    if (!limits.max_depth && !limits.node_budget) limits.max_depth = k - 1;
    Ratio target = make_ratio(1, u);
    Representation seed = detail::rep_unchecked(target, {u});

    auto closed = closure(seed, ops, limits);
    std::vector<Representation> hit;
    for (const auto& r : closed.reachable)
        if (r.parts() == k) hit.push_back(r);

    SearchBounds bounds;
    if (limits.node_budget) bounds.node_budget = limits.node_budget;
    auto all = enumerate_reps(target, k, {}, bounds);

    GapResult res;
    res.enumeration_complete = all.complete;
    res.closure_exhausted = closed.frontier_exhausted;
    std::set_difference(all.reps.begin(), all.reps.end(), hit.begin(), hit.end(),
                        std::back_inserter(res.unreachable));
    return res;
}

// ---- coprime descent -------------------------------------------------------------

struct CoprimePath {
    std::vector<OperatorApplication> path;  // applications from seed, in order
    Representation result;
    Natural new_denominator;  // smallest result denominator coprime to every seed part
};

inline std::optional<CoprimePath> coprime_path_search(const Representation& seed,
                                                      const OperatorSet& ops,
                                                      std::size_t max_depth,
                                                      std::optional<std::uint64_t> node_budget = {}) {
    if (max_depth == 0) throw invalid_argument("max_depth must be >= 1");
    struct Entry {
        Representation rep;
        std::size_t depth;
        std::size_t parent;       // index into entries
        std::size_t edge;         // index into edges
    };
    std::vector<Entry> entries{{seed, 0, std::size_t(-1), std::size_t(-1)}};
    std::vector<OperatorApplication> edges;
    std::set<Representation> visited{seed};
    std::uint64_t budget = node_budget.value_or(UINT64_MAX);
    std::uint64_t used = 0;

    auto coprime_part = [&](const Representation& r) -> std::optional<Natural> {
        for (const auto& v : r.denoms) {
            bool ok = true;
            for (const auto& s : seed.denoms) {
                Natural g;
                mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
                if (g != 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return v;
        }
        return std::nullopt;
    };

    for (std::size_t head = 0; head < entries.size(); ++head) {
        // entries[head] may reallocate during expansion; take copies
        Representation rep = entries[head].rep;
        std::size_t depth = entries[head].depth;
        if (depth >= max_depth) continue;

        std::vector<OperatorApplication> apps;
        if (ops.gamma)
            for (std::size_t i = 0; i < rep.parts(); ++i)
                for (const auto& d : divisors(rep.denoms[i])) {
                    GammaChoice c{i, d};
                    apps.push_back({c, rep, gamma_split(rep, c)});
                }
        if (ops.o)
            for (const auto& p : o_candidates(rep)) apps.push_back({p, rep, o_swap(rep, p)});

        for (auto& app : apps) {
            if (++used > budget) throw budget_exceeded("coprime search budget exhausted");
            if (!visited.insert(app.to).second) continue;
            Representation child = app.to;
            edges.push_back(std::move(app));
            entries.push_back({child, depth + 1, head, edges.size() - 1});
            if (auto nd = coprime_part(child)) {
                CoprimePath out;
                out.result = child;
                out.new_denominator = *nd;
                for (std::size_t at = entries.size() - 1; entries[at].parent != std::size_t(-1);
                     at = entries[at].parent)
                    out.path.push_back(edges[entries[at].edge]);
                std::reverse(out.path.begin(), out.path.end());
                return out;
            }
        }
    }
    return std::nullopt;
}

}  // namespace egypt
