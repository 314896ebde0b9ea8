// Triangle-free, wheel-free, and the chromatic number still grows.

#include <burling/burling.hpp>

#include <iostream>

int main()
{
    using namespace burling;
    for (int k = 1 ; k <= 3 ; ++k) {
        auto g = build_graft(k).first;
        auto kk = static_cast<std::size_t>(k);
        auto cert = chromatic_number(g.graph());
        bool rainbow = ! find_non_rainbow_coloring(g, kk, kk);
        std::cout << "G_" << k << ": triangle " << (find_triangle(g.graph()) ? "yes" : "no")
                  << ", wheel " << (find_wheel(g.graph()) ? "yes" : "no")
                  << ", chi " << cert.chi
                  << ", rainbow tip in every " << k << "-colouring: " << (rainbow ? "yes" : "no") << "\n";
    }
    auto g4 = build_graft(4).first.graph();
    auto b = bounds_only(g4);
    std::cout << "G_4: " << b.lower << " <= chi <= " << b.upper << "\n";
}
