// Builds (G_k, T_k) for k = 1..4 and certifies the clean conditions.
// Level 4 uses an explicit node limit per detector.

#include <burling/burling.hpp>

#include <iostream>

int main()
{
    using namespace burling;
    for (int k = 1 ; k <= 4 ; ++k) {
        auto [g, trace] = build_graft(k);
        auto opts = k < 4 ? SearchOptions::exhaustive() : SearchOptions::with_limit(2'000'000);
        auto report = is_clean(g, opts);
        std::cout << "k=" << k << " n=" << g.size() << " tips=" << g.tips().size() << "\n";
        for (auto & v : report.conditions)
            std::cout << "  (" << v.index << ") " << v.name << ": " << status_name(v.status)
                      << " explored=" << v.explored << "\n";
    }
}
