// Every way to write 1/u as a sum of two unit fractions.
#include <egypt/egypt.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    unsigned long u = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 6;
    auto res = egypt::enumerate_reps(egypt::make_ratio(1, u), 2);
    for (const auto& r : res.reps) {
        std::cout << "1/" << u << " = ";
        for (std::size_t i = 0; i < r.denoms.size(); ++i)
            std::cout << (i ? " + " : "") << "1/" << egypt::dec(r.denoms[i]);
        std::cout << '\n';
    }
    std::cout << res.count << " representation(s), " << res.nodes_visited << " nodes\n";
}
