// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <burling/burling.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace burling;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    int failures = 0;

    auto criterion(int index, const std::string & title, double limit_seconds, const std::function<Outcome()> & body) -> void
    {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        }
        catch (const std::exception & e) {
            o = { false, std::string("exception: ") + e.what() };
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > limit_seconds) {
            o.pass = false;
            o.detail += " [over time limit]";
        }
        if (! o.pass)
            ++failures;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs / limit %.0fs", secs, limit_seconds);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << ". " << title << ": " << o.detail
                  << " (" << timing << ")" << std::endl;
    }

    auto random_graph(std::mt19937_64 & rng, std::size_t n, double density) -> Graph
    {
        std::bernoulli_distribution coin(density);
        GraphBuilder b(n);
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                if (coin(rng))
                    b.add_edge(u, v);
        return std::move(b).build();
    }

    auto random_tips(std::mt19937_64 & rng, std::size_t n, std::size_t max_tips) -> VertexList
    {
        VertexList all(n);
        for (Vertex v = 0 ; v < n ; ++v)
            all[v] = v;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(std::uniform_int_distribution<std::size_t>(0, std::min(n, max_tips))(rng));
        return all;
    }

    /// Detector and oracle must agree; a detector witness must also validate.
    auto agree(const Graph & g, const std::optional<VertexList> & tips, Pattern kind,
            const std::optional<Witness> & found, std::string & why) -> bool
    {
        auto expected = oracle_contains(g, tips, kind).has_value();
        if (found.has_value() != expected) {
            why = std::string(pattern_name(kind)) + " disagrees with the oracle on n=" + std::to_string(g.size());
            return false;
        }
        if (found && ! validate_witness(g, tips, *found)) {
            why = std::string(pattern_name(kind)) + " produced an invalid witness " + to_string(*found);
            return false;
        }
        return true;
    }
}

int main()
{
    criterion(1, "construction sizes", 1, [] {
        std::vector<std::pair<std::size_t, std::size_t>> grafts { { 2, 1 }, { 5, 2 }, { 21, 8 }, { 309, 128 } };
        std::vector<std::pair<std::size_t, std::size_t>> pairs { { 1, 1 }, { 3, 2 }, { 13, 8 }, { 181, 128 } };
        std::ostringstream d;
        bool ok = true;
        for (int k = 1 ; k <= 4 ; ++k) {
            auto g = build_graft(k).first;
            auto p = burling_pair(k);
            std::pair got_g { g.size(), g.tips().size() };
            std::pair got_p { p.graph().size(), p.stables().size() };
            ok = ok && got_g == grafts[k - 1] && got_p == pairs[k - 1];
            d << (k > 1 ? "; " : "") << "k=" << k << " graft (" << got_g.first << "," << got_g.second << ") pair ("
              << got_p.first << "," << got_p.second << ")";
        }
        return Outcome{ ok, d.str() };
    });

    criterion(2, "G_2 is C5 with two tips at distance 2", 1, [] {
        Graft c5(named::cycle(5), { 0, 2 });
        auto map = graft_isomorphic(build_graft(2).first, c5);
        bool ok = map && is_graft_isomorphism(build_graft(2).first, c5, *map);
        return Outcome{ ok, ok ? "graft isomorphism found and checked" : "no isomorphism" };
    });

    criterion(3, "no induced wheel in Burling graphs", 10, [] {
        std::ostringstream d;
        bool ok = true;
        for (int k = 1 ; k <= 3 ; ++k) {
            SearchStats a, b;
            auto wp = find_wheel(burling_pair(k).graph(), 3, SearchOptions::exhaustive(), &a);
            auto wg = find_wheel(build_graft(k).first.graph(), 3, SearchOptions::exhaustive(), &b);
            ok = ok && ! wp && ! wg;
            d << "k=" << k << " exhaustive none (" << a.nodes << "+" << b.nodes << " nodes); ";
        }
        constexpr std::uint64_t budget = 10'000'000;
        auto g4 = build_graft(4).first;
        SearchStats s;
        std::optional<Witness> w;
        bool exhausted = true;
        try {
            w = find_wheel(g4.graph(), 3, SearchOptions::with_limit(budget), &s);
            exhausted = false;
        }
        catch (const BudgetExceeded &) {
        }
        ok = ok && ! w && (s.nodes >= budget || ! exhausted);
        d << "k=4 " << (w ? "WHEEL FOUND" : exhausted ? "budget-clean" : "none (search completed)") << " after "
          << s.nodes << " nodes";
        return Outcome{ ok, d.str() };
    });

    criterion(4, "(G_k, T_k) is clean for k <= 3", 60, [] {
        std::ostringstream d;
        bool ok = true;
        for (int k = 1 ; k <= 3 ; ++k) {
            auto r = is_clean(build_graft(k).first, SearchOptions::exhaustive());
            ok = ok && r.clean();
            d << (k > 1 ? "; " : "") << "k=" << k << ":";
            for (auto & v : r.conditions)
                d << " (" << v.index << ")" << status_name(v.status);
        }
        return Outcome{ ok, d.str() };
    });

    criterion(5, "operation closure on 1000 random scripts", 300, [] {
        ScriptFuzzer fuzzer(20240501, { 8, 40, 3 });
        std::size_t clean = 0, steps = 0, max_n = 0;
        std::ostringstream failures_text;
        for (int i = 0 ; i < 1000 ; ++i) {
            auto name = "script" + std::to_string(i);
            auto s = fuzzer.next(name);
            auto out = replay_certified(s, SearchOptions::exhaustive());
            steps += out.steps_applied;
            max_n = std::max(max_n, out.final_graft.size());
            if (! out.failing_step && ! out.inconclusive && out.steps_applied == s.steps.size()) {
                ++clean;
                continue;
            }
            auto path = write_script(s, std::filesystem::path("acceptance-failures"), name);
            failures_text << "\n    not clean, replay with: burling fuzz --script " << path.string() << "\n"
                          << format_script(s);
        }
        std::ostringstream d;
        d << clean << "/1000 clean after every step (" << steps << " operations, largest graft " << max_n << " vertices)"
          << failures_text.str();
        return Outcome{ clean == 1000 && max_n <= 40, d.str() };
    });

    criterion(6, "pair construction and graft construction agree", 30, [] {
        std::ostringstream d;
        bool ok = true;
        for (int k = 1 ; k <= 3 ; ++k) {
            auto map = check_equivalence(k);
            bool good = map && is_graft_isomorphism(graft_from_pair(burling_pair(k)), build_graft(k).first, *map);
            ok = ok && good;
            d << (k > 1 ? "; " : "") << "k=" << k << (good ? " bijection" : " NONE");
        }
        return Outcome{ ok, d.str() };
    });

    criterion(7, "detectors agree with the brute-force oracle", 600, [] {
        std::mt19937_64 rng(7);
        std::string why;
        std::size_t positives = 0;
        for (int i = 0 ; i < 10000 ; ++i) {
            auto n = 1 + static_cast<std::size_t>(i % 10);
            auto g = random_graph(rng, n, 0.1 + 0.1 * (i % 5));
            auto holes = find_holes(g);
            auto first_hole = holes.empty() ? std::optional<Witness>() : std::optional<Witness>(holes.front());
            std::optional<Witness> found[] = { find_triangle(g), first_hole, find_wheel(g), find_theta(g), find_fan(g) };
            Pattern kinds[] = { Pattern::triangle, Pattern::hole, Pattern::wheel, Pattern::theta, Pattern::fan };
            for (int j = 0 ; j < 5 ; ++j) {
                positives += found[j] ? 1 : 0;
                if (! agree(g, std::nullopt, kinds[j], found[j], why))
                    return Outcome{ false, "graph " + std::to_string(i) + ": " + why };
            }
        }
        for (int i = 0 ; i < 2000 ; ++i) {
            auto n = 1 + static_cast<std::size_t>(i % 10);
            auto g = random_graph(rng, n, 0.1 + 0.1 * (i % 5));
            Graft gf(g, random_tips(rng, n, 4));
            std::optional<Witness> found[] = { find_tip_edge(gf), find_guarded_fan(gf), find_mountable_path(gf) };
            Pattern kinds[] = { Pattern::tip_edge, Pattern::guarded_fan, Pattern::mountable_path };
            for (int j = 0 ; j < 3 ; ++j) {
                positives += found[j] ? 1 : 0;
                if (! agree(g, gf.tips(), kinds[j], found[j], why))
                    return Outcome{ false, "graft " + std::to_string(i) + ": " + why };
            }
        }
        return Outcome{ true, "10000 graphs x 5 patterns, 2000 grafts x 3 patterns, " + std::to_string(positives)
            + " witnesses validated" };
    });

    criterion(8, "chromatic numbers and the rainbow-tip bound", 300, [] {
        auto c5 = chromatic_number(build_graft(2).first.graph());
        auto g3 = chromatic_number(build_graft(3).first.graph());
        auto p3 = chromatic_number(burling_pair(3).graph());
        auto rainbow = find_non_rainbow_coloring(build_graft(3).first, 3, 3);
        bool proper = is_proper(build_graft(2).first.graph(), c5.witness_coloring)
            && is_proper(build_graft(3).first.graph(), g3.witness_coloring)
            && is_proper(burling_pair(3).graph(), p3.witness_coloring);
        bool ok = c5.chi == 3 && g3.chi == 4 && p3.chi == 3 && ! rainbow && proper;
        std::ostringstream d;
        d << "chi(G_2)=" << c5.chi << " chi(G_3)=" << g3.chi << " chi(G'_3)=" << p3.chi
          << "; non-rainbow 3-colouring of (G_3,T_3): " << (rainbow ? "FOUND" : "none");
        return Outcome{ ok, d.str() };
    });

    criterion(9, "G_3 is triangle-free, wheel-free and 4-chromatic", 120, [] {
        auto g = build_graft(3).first.graph();
        bool omega2 = ! find_triangle(g) && g.edge_count() > 0;
        bool no_wheel = ! find_wheel(g, 3, SearchOptions::exhaustive());
        auto chi = chromatic_number(g).chi;
        std::ostringstream d;
        d << "omega=" << (omega2 ? "2" : "not 2") << ", wheel " << (no_wheel ? "none" : "FOUND") << ", chi=" << chi;
        return Outcome{ omega2 && no_wheel && chi == 4, d.str() };
    });

    std::cout << (failures ? "FAILED: " + std::to_string(failures) + " criteria" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
