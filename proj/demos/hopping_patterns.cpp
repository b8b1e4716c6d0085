// Prints a Welch hopping pattern as a time/frequency grid, then how much two
// patterns from the same family can collide under any time/frequency offset.
//
//   hopping_patterns [p]   (default 13)

#include "costas/xcorr.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    const auto p = static_cast<std::uint32_t>(argc > 1 ? std::atoi(argv[1]) : 13);
    try {
        const auto family = costas::welch_family(p);
        const auto& f = family.front();
        std::cout << costas::to_string(f.provenance()) << "\n";
        for (auto row = f.n(); row >= 1; --row) {
            for (std::size_t i = 1; i <= f.n(); ++i) std::cout << (f.at(i) == row ? " #" : " .");
            std::cout << "\n";
        }
        std::cout << "Costas: " << (costas::is_costas(f) ? "yes" : "no") << "\n";

        if (family.size() > 1) {
            const auto w = costas::pair_max(family[0], family[1]);
            std::cout << "worst overlap with " << costas::to_string(family[1].provenance()) << ": " << w.value
                      << " hits at (u, v) = (" << w.u << ", " << w.v << ")\n";
            const auto r = costas::family_max(family);
            std::cout << "worst overlap across all " << r.family_size << " patterns: " << r.max_corr << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
