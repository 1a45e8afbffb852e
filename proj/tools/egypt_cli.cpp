// Command-line front end. Results go to stdout in the selected format;
// configuration echo, progress, timing and error records go to stderr as
// JSON lines. Exit codes: 0 done, 2 result incomplete (a budget or cap cut
// the run), 3 usage, 4 validation or precondition failure.

#include <egypt/egypt.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace egypt;

namespace {

enum class Fmt { human, jsonl, csv };

int g_exit = 0;

std::string jesc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string jstr(const std::string& s) { return '"' + jesc(s) + '"'; }
const char* jbool(bool b) { return b ? "true" : "false"; }

std::string human_tuple(const Representation& r) {
    std::string out = "(";
    for (std::size_t i = 0; i < r.denoms.size(); ++i) {
        if (i) out += ',';
        out += dec(r.denoms[i]);
    }
    out += ')';
    return out;
}

void emit_rep(Fmt fmt, const Representation& r) {
    switch (fmt) {
        case Fmt::human: std::cout << human_tuple(r) << '\n'; break;
        case Fmt::jsonl: std::cout << serialize(r) << '\n'; break;
        case Fmt::csv: std::cout << serialize_csv(r) << '\n'; break;
    }
}

// metadata records always go to stderr as JSON lines
void emit_meta(const std::string& json) { std::cerr << json << '\n' << std::flush; }

Representation parse_rep(const std::string& s) {
    if (!s.empty() && s.front() == '{') return deserialize(s);
    return deserialize_csv(s);
}

OperatorSet parse_ops(const std::string& s) {
    OperatorSet out{false, false};
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "gamma")
            out.gamma = true;
        else if (tok == "o")
            out.o = true;
        else
            throw invalid_argument("unknown operator '" + tok + "' (expected gamma, o)");
    }
    if (!out.gamma && !out.o) throw invalid_argument("operator set is empty");
    return out;
}

PartsParity parse_parity(const std::string& s) {
    if (s == "any") return PartsParity::any;
    if (s == "odd") return PartsParity::odd;
    return PartsParity::even;
}

// ---- shared option bundles -------------------------------------------------

struct FormatOpt {
    std::string format = "human";
    Fmt fmt() const {
        if (format == "jsonl") return Fmt::jsonl;
        if (format == "csv") return Fmt::csv;
        return Fmt::human;
    }
    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"human", "jsonl", "csv"}))
            ->capture_default_str();
    }
};

struct ProfileOpts {
    bool distinct = false;
    bool odd = false;
    std::string min_denominator = "1";
    std::string parts_parity = "any";
    std::vector<std::string> forbid;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--distinct", distinct, "denominators must be pairwise distinct");
        cmd->add_flag("--odd", odd, "denominators must be odd");
        cmd->add_option("--min-denominator", min_denominator, "least admissible denominator")
            ->capture_default_str();
        cmd->add_option("--parts-parity", parts_parity, "required parity of the part count")
            ->check(CLI::IsMember({"any", "odd", "even"}))
            ->capture_default_str();
        cmd->add_option("--forbid-lcm-div", forbid,
                        "reject representations whose denominator lcm is divisible by this "
                        "(repeatable)");
    }
    RestrictionProfile profile() const {
        RestrictionProfile p;
        p.distinct = distinct;
        p.odd_only = odd;
        p.min_denominator = parse_natural(min_denominator);
        p.parts_parity = parse_parity(parts_parity);
        for (const auto& f : forbid) p.forbid_lcm_divisible_by.push_back(parse_natural(f));
        return p;
    }
    std::string echo() const {
        std::string out = "\"distinct\":" + std::string(jbool(distinct)) +
                          ",\"odd\":" + jbool(odd) +
                          ",\"min_denominator\":" + jstr(min_denominator) +
                          ",\"parts_parity\":" + jstr(parts_parity) + ",\"forbid_lcm_div\":[";
        for (std::size_t i = 0; i < forbid.size(); ++i) {
            if (i) out += ',';
            out += jstr(forbid[i]);
        }
        return out + "]";
    }
};

struct BoundOpts {
    std::string max_denominator;
    std::uint64_t max_results = 0;
    std::uint64_t node_budget = 0;
    bool has_max_results = false, has_node_budget = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-denominator", max_denominator, "cap on any denominator");
        cmd->add_option("--max-results", max_results, "stop after this many results")
            ->each([this](const std::string&) { has_max_results = true; });
        cmd->add_option("--node-budget", node_budget, "abort after this many search nodes")
            ->envname("EGYPT_NODE_BUDGET")
            ->each([this](const std::string&) { has_node_budget = true; });
    }
    SearchBounds bounds() const {
        SearchBounds b;
        if (!max_denominator.empty()) b.max_denominator = parse_natural(max_denominator);
        if (has_max_results) b.max_results = max_results;
        if (has_node_budget) b.node_budget = node_budget;
        return b;
    }
    std::string echo() const {
        std::string out = "\"max_denominator\":";
        out += max_denominator.empty() ? "null" : jstr(max_denominator);
        out += ",\"max_results\":";
        out += has_max_results ? jstr(std::to_string(max_results)) : "null";
        out += ",\"node_budget\":";
        out += has_node_budget ? jstr(std::to_string(node_budget)) : "null";
        return out;
    }
};

struct RunOpts {
    unsigned parallel = 1;
    double progress_interval = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--parallel", parallel, "worker threads for the search")
            ->envname("EGYPT_PARALLEL")
            ->check(CLI::Range(1u, 512u))
            ->capture_default_str();
        cmd->add_option("--progress-interval", progress_interval,
                        "seconds between progress records on stderr (0 = off)")
            ->capture_default_str();
    }
    std::string echo() const {
        return "\"parallel\":" + jstr(std::to_string(parallel)) + ",\"progress_interval\":" +
               jstr(std::to_string(progress_interval));
    }
};

class ProgressThread {
public:
    ProgressThread(SearchProbe& probe, double interval) : probe_(probe), interval_(interval) {
        if (interval_ > 0)
            th_ = std::thread([this] {
                std::unique_lock lk(mu_);
                while (!cv_.wait_for(lk, std::chrono::duration<double>(interval_),
                                     [this] { return done_; }))
                    emit_meta("{\"progress\":{\"nodes\":\"" +
                              std::to_string(probe_.nodes.load()) + "\",\"found\":\"" +
                              std::to_string(probe_.found.load()) + "\",\"depth\":\"" +
                              std::to_string(probe_.depth.load()) + "\"}}");
            });
    }
    ~ProgressThread() {
        if (th_.joinable()) {
            {
                std::lock_guard lk(mu_);
                done_ = true;
            }
            cv_.notify_all();
            th_.join();
        }
    }

private:
    SearchProbe& probe_;
    double interval_;
    std::thread th_;
    std::mutex mu_;
    std::condition_variable cv_;
    bool done_ = false;
};

void echo_config(const std::string& command, const std::string& fields) {
    emit_meta("{\"config\":{\"command\":" + jstr(command) + (fields.empty() ? "" : ",") + fields +
              "}}");
}

std::string edge_params_json(const OperatorApplication& app) {
    if (app.is_gamma()) {
        const auto& g = std::get<GammaChoice>(app.params);
        return "{\"part_index\":" + jstr(std::to_string(g.part_index)) + ",\"d\":" +
               jstr(dec(g.d)) + "}";
    }
    const auto& o = std::get<OParams>(app.params);
    return "{\"q\":" + jstr(dec(o.q)) + ",\"d\":" + jstr(dec(o.d)) + "}";
}

void emit_edge(Fmt fmt, const OperatorApplication& app) {
    if (fmt == Fmt::jsonl) {
        std::cout << "{\"op\":" << jstr(app.is_gamma() ? "gamma" : "o")
                  << ",\"params\":" << edge_params_json(app) << ",\"from\":" << serialize(app.from)
                  << ",\"to\":" << serialize(app.to) << "}\n";
        return;
    }
    if (app.is_gamma()) {
        const auto& g = std::get<GammaChoice>(app.params);
        std::cout << "gamma[part=" << g.part_index << ",d=" << dec(g.d)
                  << "]: " << human_tuple(app.from) << " -> " << human_tuple(app.to) << '\n';
    } else {
        const auto& o = std::get<OParams>(app.params);
        std::cout << "o[q=" << dec(o.q) << ",d=" << dec(o.d) << "]: " << human_tuple(app.from)
                  << " -> " << human_tuple(app.to) << '\n';
    }
}

// ---- subcommands -------------------------------------------------------------

struct EnumerateCmd {
    std::string target = "1";
    std::size_t parts = 0;
    FormatOpt format;
    ProfileOpts profile;
    BoundOpts bound;
    RunOpts run;
    bool count_only = false;

    void attach(CLI::App& app, const char* name, const char* desc, bool counting) {
        count_only = counting;
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--target", target, "target rational, \"a/b\" or \"a\"")
            ->capture_default_str();
        cmd->add_option("--parts", parts, "number of unit fractions")->required();
        format.attach(cmd);
        profile.attach(cmd);
        bound.attach(cmd);
        run.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        echo_config(count_only ? "count" : "enumerate",
                    "\"target\":" + jstr(target) + ",\"parts\":" + jstr(std::to_string(parts)) +
                        ",\"format\":" + jstr(format.format) + "," + profile.echo() + "," +
                        bound.echo() + "," + run.echo());
        Ratio t = parse_ratio(target);
        SearchProbe probe;
        ProgressThread progress(probe, run.progress_interval);
        Fmt fmt = format.fmt();
        if (count_only) {
            auto res = count_reps(t, parts, profile.profile(), bound.bounds(), run.parallel, &probe);
            switch (fmt) {
                case Fmt::human: std::cout << res.count << '\n'; break;
                case Fmt::jsonl:
                    std::cout << "{\"count\":" << jstr(std::to_string(res.count))
                              << ",\"complete\":" << jbool(res.complete)
                              << ",\"nodes\":" << jstr(std::to_string(res.nodes_visited)) << "}\n";
                    break;
                case Fmt::csv:
                    std::cout << res.count << ',' << jbool(res.complete) << ','
                              << res.nodes_visited << '\n';
                    break;
            }
            return res.complete ? 0 : 2;
        }
        auto res =
            enumerate_reps(t, parts, profile.profile(), bound.bounds(), run.parallel, &probe);
        for (const auto& r : res.reps) emit_rep(fmt, r);
        std::string summary = "{\"count\":" + jstr(std::to_string(res.count)) +
                              ",\"complete\":" + jbool(res.complete) +
                              ",\"nodes\":" + jstr(std::to_string(res.nodes_visited)) + "}";
        if (fmt == Fmt::jsonl)
            std::cout << summary << '\n';
        else if (fmt == Fmt::human)
            std::cout << "# count=" << res.count << " complete=" << jbool(res.complete)
                      << " nodes=" << res.nodes_visited << '\n';
        else
            emit_meta(summary);  // keep csv stdout pure data rows
        return res.complete ? 0 : 2;
    }
};

struct ApplyCmd {
    std::string rep, op;
    std::size_t part_index = 0;
    std::string d, q;
    std::size_t pair_index = 0;
    bool has_pair_index = false;
    FormatOpt format;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("apply", "apply one operator application to a representation");
        cmd->add_option("--rep", rep, "representation record (JSON or CSV)")->required();
        cmd->add_option("--op", op, "operator")->check(CLI::IsMember({"gamma", "o"}))->required();
        cmd->add_option("--part-index", part_index, "gamma: which part to split");
        cmd->add_option("--d", d, "gamma: divisor of the part / o: even increment");
        cmd->add_option("--q", q, "o: odd factor q > 1");
        cmd->add_option("--pair-index", pair_index, "o: which (s, rs) occurrence")
            ->each([this](const std::string&) { has_pair_index = true; });
        format.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        echo_config("apply", "\"rep\":" + jstr(rep) + ",\"op\":" + jstr(op) +
                                 ",\"format\":" + jstr(format.format));
        Representation r = parse_rep(rep);
        Representation out;
        if (op == "gamma") {
            if (d.empty()) throw invalid_argument("gamma needs --d");
            out = gamma_split(r, {part_index, parse_natural(d)});
        } else {
            if (d.empty() || q.empty()) throw invalid_argument("o needs --q and --d");
            out = o_swap(r, {parse_natural(q), parse_natural(d)},
                         has_pair_index ? std::optional<std::size_t>(pair_index) : std::nullopt);
        }
        emit_rep(format.fmt(), out);
        return 0;
    }
};

struct ClosureCmd {
    std::string rep, ops = "gamma";
    std::size_t max_depth = 0, max_parts = 0;
    std::uint64_t node_budget = 0;
    bool has_depth = false, has_parts = false, has_budget = false;
    bool no_edges = false;
    FormatOpt format;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("closure", "expand a representation under the operator set");
        cmd->add_option("--rep", rep, "seed representation record")->required();
        cmd->add_option("--ops", ops, "comma list of operators: gamma,o")->capture_default_str();
        cmd->add_option("--max-depth", max_depth, "application depth limit")
            ->each([this](const std::string&) { has_depth = true; });
        cmd->add_option("--max-parts", max_parts, "part-count limit")
            ->each([this](const std::string&) { has_parts = true; });
        cmd->add_option("--node-budget", node_budget, "application budget")
            ->envname("EGYPT_NODE_BUDGET")
            ->each([this](const std::string&) { has_budget = true; });
        cmd->add_flag("--no-edges", no_edges, "suppress edge records");
        format.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        if (format.fmt() == Fmt::csv)
            throw CLI::ValidationError("--format csv cannot carry edge records; use jsonl or human");
        echo_config("closure", "\"rep\":" + jstr(rep) + ",\"ops\":" + jstr(ops) +
                                   ",\"format\":" + jstr(format.format));
        ClosureLimits limits;
        if (has_depth) limits.max_depth = max_depth;
        if (has_parts) limits.max_parts = max_parts;
        if (has_budget) limits.node_budget = node_budget;
        auto res = closure(parse_rep(rep), parse_ops(ops), limits);
        Fmt fmt = format.fmt();
        for (const auto& r : res.reachable) emit_rep(fmt, r);
        if (!no_edges)
            for (const auto& e : res.edges) emit_edge(fmt, e);
        std::string summary =
            "{\"reachable\":" + jstr(std::to_string(res.reachable.size())) +
            ",\"edges\":" + jstr(std::to_string(res.edges.size())) +
            ",\"frontier_exhausted\":" + jbool(res.frontier_exhausted) +
            ",\"duplicates\":" + jstr(std::to_string(res.duplicates_detected)) +
            ",\"applications\":" + jstr(std::to_string(res.applications)) + "}";
        if (fmt == Fmt::jsonl)
            std::cout << summary << '\n';
        else
            std::cout << "# reachable=" << res.reachable.size() << " edges=" << res.edges.size()
                      << " frontier_exhausted=" << jbool(res.frontier_exhausted)
                      << " duplicates=" << res.duplicates_detected << '\n';
        return res.frontier_exhausted ? 0 : 2;
    }
};

struct GapsCmd {
    std::string u, ops = "gamma";
    std::size_t parts = 0;
    std::size_t max_depth = 0;
    bool has_depth = false;
    std::uint64_t node_budget = 0;
    bool has_budget = false;
    FormatOpt format;

    void attach(CLI::App& app) {
        auto* cmd =
            app.add_subcommand("gaps", "representations of 1/u no operator path reaches");
        cmd->add_option("--u", u, "unit-fraction root")->required();
        cmd->add_option("--parts", parts, "representation size k")->required();
        cmd->add_option("--ops", ops, "comma list of operators: gamma,o")->capture_default_str();
        cmd->add_option("--max-depth", max_depth, "closure depth (default k-1)")
            ->each([this](const std::string&) { has_depth = true; });
        cmd->add_option("--node-budget", node_budget, "budget for closure and enumeration")
            ->envname("EGYPT_NODE_BUDGET")
            ->each([this](const std::string&) { has_budget = true; });
        format.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        echo_config("gaps", "\"u\":" + jstr(u) + ",\"parts\":" + jstr(std::to_string(parts)) +
                                ",\"ops\":" + jstr(ops) + ",\"format\":" + jstr(format.format));
        ClosureLimits limits;
        if (has_depth) limits.max_depth = max_depth;
        if (has_budget) limits.node_budget = node_budget;
        auto res = find_unreachable(parse_natural(u), parts, parse_ops(ops), limits);
        Fmt fmt = format.fmt();
        for (const auto& r : res.unreachable) emit_rep(fmt, r);
        std::string summary =
            "{\"unreachable\":" + jstr(std::to_string(res.unreachable.size())) +
            ",\"enumeration_complete\":" + jbool(res.enumeration_complete) +
            ",\"closure_exhausted\":" + jbool(res.closure_exhausted) + "}";
        bool complete = res.enumeration_complete && res.closure_exhausted;
        if (fmt == Fmt::jsonl)
            std::cout << summary << '\n';
        else if (fmt == Fmt::human)
            std::cout << "# unreachable=" << res.unreachable.size()
                      << " enumeration_complete=" << jbool(res.enumeration_complete)
                      << " closure_exhausted=" << jbool(res.closure_exhausted) << '\n';
        else
            emit_meta(summary);
        return complete ? 0 : 2;
    }
};

struct LowerBoundCmd {
    std::string u;
    std::size_t parts = 0;
    FormatOpt format;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("lower-bound",
                                       "first-part-tree leaf count: a floor for |S_u(k)|");
        cmd->add_option("--u", u, "unit-fraction root")->required();
        cmd->add_option("--parts", parts, "representation size k")->required();
        format.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        echo_config("lower-bound", "\"u\":" + jstr(u) + ",\"parts\":" +
                                       jstr(std::to_string(parts)) + ",\"format\":" +
                                       jstr(format.format));
        Natural s = lower_bound_s(parse_natural(u), parts);
        if (format.fmt() == Fmt::jsonl)
            std::cout << "{\"value\":" << jstr(dec(s)) << "}\n";
        else
            std::cout << dec(s) << '\n';
        return 0;
    }
};

struct CoprimeCmd {
    std::string rep, ops = "gamma";
    std::size_t max_depth = 0;
    std::uint64_t node_budget = 0;
    bool has_budget = false;
    FormatOpt format;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "coprime-search", "shortest operator path introducing a seed-coprime denominator");
        cmd->add_option("--rep", rep, "seed representation record")->required();
        cmd->add_option("--ops", ops, "comma list of operators: gamma,o")->capture_default_str();
        cmd->add_option("--max-depth", max_depth, "application depth limit")->required();
        cmd->add_option("--node-budget", node_budget, "application budget")
            ->envname("EGYPT_NODE_BUDGET")
            ->each([this](const std::string&) { has_budget = true; });
        format.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        if (format.fmt() == Fmt::csv)
            throw CLI::ValidationError("--format csv cannot carry edge records; use jsonl or human");
        echo_config("coprime-search", "\"rep\":" + jstr(rep) + ",\"ops\":" + jstr(ops) +
                                          ",\"max_depth\":" + jstr(std::to_string(max_depth)) +
                                          ",\"format\":" + jstr(format.format));
        auto found = coprime_path_search(
            parse_rep(rep), parse_ops(ops), max_depth,
            has_budget ? std::optional<std::uint64_t>(node_budget) : std::nullopt);
        Fmt fmt = format.fmt();
        if (!found) {
            if (fmt == Fmt::jsonl)
                std::cout << "{\"found\":false}\n";
            else
                std::cout << "none within depth " << max_depth << '\n';
            return 0;
        }
        for (const auto& e : found->path) emit_edge(fmt, e);
        if (fmt == Fmt::jsonl)
            std::cout << "{\"found\":true,\"new_denominator\":" << jstr(dec(found->new_denominator))
                      << ",\"depth\":" << jstr(std::to_string(found->path.size()))
                      << ",\"result\":" << serialize(found->result) << "}\n";
        else
            std::cout << "new denominator " << dec(found->new_denominator) << " after "
                      << found->path.size() << " application(s): " << human_tuple(found->result)
                      << '\n';
        return 0;
    }
};

struct ShiuCmd {
    std::size_t max_parts = 8;
    bool full_nine = false;
    FormatOpt format;
    BoundOpts bound;
    RunOpts run;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "shiu-verify", "exhaust odd distinct unit-fraction representations of 1 by level");
        cmd->add_option("--max-parts", max_parts, "largest level to run")->capture_default_str();
        cmd->add_flag("--full-nine", full_nine, "run the level-9 search (heavier)");
        format.attach(cmd);
        bound.attach(cmd);
        run.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        echo_config("shiu-verify", "\"max_parts\":" + jstr(std::to_string(max_parts)) +
                                       ",\"full_nine\":" + std::string(jbool(full_nine)) +
                                       ",\"format\":" + jstr(format.format) + "," + bound.echo() +
                                       "," + run.echo());
        if (max_parts < 3) throw invalid_argument("--max-parts must be >= 3");
        auto bounds = bound.bounds();
        if (max_parts > SHIU_CERTIFIED_MAX && !bounds.node_budget && !bounds.max_denominator)
            throw invalid_argument(
                "levels past 9 are exploratory; set --node-budget or --max-denominator");
        Fmt fmt = format.fmt();
        SearchProbe probe;
        ProgressThread progress(probe, run.progress_interval);
        bool all_complete = true;
        bool nine_ran = false, nine_match = false;
        for (std::size_t l = 3; l <= max_parts; ++l) {
            if (l == 9 && !full_nine) {
                emit_meta("{\"notice\":\"level 9 skipped; pass --full-nine to run it\"}");
                continue;
            }
            auto lvl = verify_shiu_level(l, bounds, run.parallel, &probe);
            all_complete = all_complete && lvl.complete;
            for (const auto& s : lvl.solutions) emit_rep(fmt, s);
            std::string rec = "{\"l\":" + jstr(std::to_string(lvl.l)) +
                              ",\"solutions\":" + jstr(std::to_string(lvl.solution_count)) +
                              ",\"complete\":" + jbool(lvl.complete) +
                              ",\"authoritative\":" + jbool(lvl.authoritative) +
                              ",\"nodes\":" + jstr(std::to_string(lvl.nodes_visited)) + "}";
            if (fmt == Fmt::jsonl)
                std::cout << rec << '\n';
            else if (fmt == Fmt::human)
                std::cout << "# l=" << lvl.l << " solutions=" << lvl.solution_count
                          << " complete=" << jbool(lvl.complete)
                          << " authoritative=" << jbool(lvl.authoritative)
                          << " nodes=" << lvl.nodes_visited << '\n';
            else
                emit_meta(rec);
            emit_meta("{\"timing\":{\"l\":\"" + std::to_string(lvl.l) + "\",\"ms\":\"" +
                      std::to_string(lvl.wall_ms) + "\"}}");
            if (l == 9) {
                nine_ran = true;
                nine_match = lvl.complete && lvl.solutions == reference_solutions();
            }
        }
        if (nine_ran) {
            if (fmt == Fmt::jsonl)
                std::cout << "{\"reference_match\":" << jbool(nine_match) << "}\n";
            else if (fmt == Fmt::human)
                std::cout << "# reference_match=" << jbool(nine_match) << '\n';
            else
                emit_meta("{\"reference_match\":" + std::string(jbool(nine_match)) + "}");
        }
        return all_complete ? 0 : 2;
    }
};

struct SigmaCmd {
    int s = 0;
    std::string n;
    FormatOpt format;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("sigma", "divisor power sum sigma_s(n), exact");
        cmd->add_option("-s,--s", s, "exponent: -1, 0 or 1")->required();
        cmd->add_option("-n,--n", n, "argument")->required();
        format.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        echo_config("sigma", "\"s\":" + jstr(std::to_string(s)) + ",\"n\":" + jstr(n) +
                                 ",\"format\":" + jstr(format.format));
        Ratio v = sigma(s, parse_natural(n));
        if (format.fmt() == Fmt::jsonl)
            std::cout << "{\"value\":" << jstr(pretty(v)) << "}\n";
        else
            std::cout << pretty(v) << '\n';
        return 0;
    }
};

struct PerfectCmd {
    std::string n;
    FormatOpt format;

    void attach(CLI::App& app) {
        auto* cmd =
            app.add_subcommand("perfect-rep", "unit-fraction representation from a perfect number");
        cmd->add_option("-n,--n", n, "candidate perfect number")->required();
        format.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        echo_config("perfect-rep", "\"n\":" + jstr(n) + ",\"format\":" + jstr(format.format));
        emit_rep(format.fmt(), perfect_representation(parse_natural(n)));
        return 0;
    }
};

struct AnalyzeCmd {
    std::string rep;
    bool use_seed = false;
    FormatOpt format;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("analyze", "divisor coverage of a target-1 representation");
        cmd->add_option("--rep", rep, "representation record (JSON or CSV)");
        cmd->add_flag("--seed", use_seed, "analyze the built-in nine-part seed equation");
        format.attach(cmd);
        cmd->callback([this] { g_exit = execute(); });
    }

    int execute() const {
        echo_config("analyze", "\"rep\":" + jstr(use_seed ? "seed" : rep) +
                                   ",\"format\":" + jstr(format.format));
        if (!use_seed && rep.empty()) throw invalid_argument("pass --rep or --seed");
        Representation r = use_seed ? seed_equation() : parse_rep(rep);
        auto cov = coverage(r);
        switch (format.fmt()) {
            case Fmt::jsonl: {
                std::string missing;
                for (std::size_t i = 0; i < cov.missing.size(); ++i) {
                    if (i) missing += ',';
                    missing += jstr(dec(cov.missing[i]));
                }
                std::cout << "{\"n\":" << jstr(dec(cov.n))
                          << ",\"divisor_count\":" << jstr(std::to_string(cov.divisor_count))
                          << ",\"used\":" << jstr(std::to_string(cov.used))
                          << ",\"missing_count\":" << jstr(std::to_string(cov.missing.size()))
                          << ",\"missing\":[" << missing
                          << "],\"abundancy\":" << jstr(pretty(cov.abundancy)) << "}\n";
                break;
            }
            case Fmt::csv: {
                std::string missing;
                for (std::size_t i = 0; i < cov.missing.size(); ++i) {
                    if (i) missing += ';';
                    missing += dec(cov.missing[i]);
                }
                std::cout << dec(cov.n) << ',' << cov.divisor_count << ',' << cov.used << ','
                          << cov.missing.size() << ',' << pretty(cov.abundancy) << ",\"" << missing
                          << "\"\n";
                break;
            }
            case Fmt::human: {
                std::cout << "n=" << dec(cov.n) << " divisors=" << cov.divisor_count
                          << " used=" << cov.used << " missing_count=" << cov.missing.size()
                          << " abundancy=" << pretty(cov.abundancy) << '\n';
                std::cout << "missing:";
                for (const auto& m : cov.missing) std::cout << ' ' << dec(m);
                std::cout << '\n';
                break;
            }
        }
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Egyptian-fraction enumeration, operators and verification"};
    app.set_config("--config", "", "read options from an INI file (command line wins)");
    app.require_subcommand(1);

    EnumerateCmd enumerate_cmd, count_cmd;
    ApplyCmd apply_cmd;
    ClosureCmd closure_cmd;
    GapsCmd gaps_cmd;
    LowerBoundCmd lower_cmd;
    CoprimeCmd coprime_cmd;
    ShiuCmd shiu_cmd;
    SigmaCmd sigma_cmd;
    PerfectCmd perfect_cmd;
    AnalyzeCmd analyze_cmd;

    enumerate_cmd.attach(app, "enumerate", "list every representation of the target", false);
    count_cmd.attach(app, "count", "count representations without materializing them", true);
    apply_cmd.attach(app);
    closure_cmd.attach(app);
    gaps_cmd.attach(app);
    lower_cmd.attach(app);
    coprime_cmd.attach(app);
    shiu_cmd.attach(app);
    sigma_cmd.attach(app);
    perfect_cmd.attach(app);
    analyze_cmd.attach(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const not_perfect& e) {
        emit_meta("{\"error\":" + jstr(e.kind()) + ",\"message\":" + jstr(e.what()) +
                  ",\"actual\":" + jstr(pretty(e.actual)) + "}");
        return 4;
    } catch (const sum_mismatch& e) {
        emit_meta("{\"error\":" + jstr(e.kind()) + ",\"message\":" + jstr(e.what()) +
                  ",\"actual\":" + jstr(frac(e.actual)) + "}");
        return 4;
    } catch (const parse_error& e) {
        emit_meta("{\"error\":" + jstr(e.kind()) + ",\"message\":" + jstr(e.what()) +
                  ",\"position\":" + jstr(std::to_string(e.position)) + "}");
        return 4;
    } catch (const error& e) {
        emit_meta("{\"error\":" + jstr(e.kind()) + ",\"message\":" + jstr(e.what()) + "}");
        return 4;
    } catch (const std::exception& e) {
        emit_meta("{\"error\":\"Internal\",\"message\":" + jstr(e.what()) + "}");
        return 1;
    }
    return g_exit;
}
