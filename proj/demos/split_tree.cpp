// Expand (u) twice under the divisor split gamma_d and print the edges.
#include <egypt/egypt.hpp>

#include <cstdlib>
#include <iostream>

static std::string tuple(const egypt::Representation& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.denoms.size(); ++i)
        s += (i ? "," : "") + egypt::dec(r.denoms[i]);
    return s + ")";
}

int main(int argc, char** argv) {
    unsigned long u = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4;
    auto seed = egypt::canonicalize(egypt::make_ratio(1, u), {u});
    auto cl = egypt::closure(seed, {.gamma = true, .o = false}, {.max_depth = 2});
    for (const auto& e : cl.edges) {
        const auto& g = std::get<egypt::GammaChoice>(e.params);
        std::cout << tuple(e.from) << " --gamma[part=" << g.part_index
                  << ",d=" << egypt::dec(g.d) << "]--> " << tuple(e.to) << '\n';
    }
    std::cout << cl.reachable.size() << " reachable, " << cl.duplicates_detected
              << " duplicate hit(s)\n";
}
