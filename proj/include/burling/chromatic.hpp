#pragma once

#include <burling/graph.hpp>
#include <burling/search.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

namespace burling
{
    struct Coloring
    {
        std::vector<std::uint32_t> colors;
        std::size_t count = 0;

        friend auto operator==(const Coloring &, const Coloring &) -> bool = default;
    };

    /// Proper, and uses exactly the colours 0..count-1 with every class non-empty.
    inline auto is_proper(const Graph & g, const Coloring & c) -> bool
    {
        if (c.colors.size() != g.size())
            return false;
        std::vector<bool> used(c.count, false);
        for (Vertex v = 0 ; v < g.size() ; ++v) {
            if (c.colors[v] >= c.count)
                return false;
            used[c.colors[v]] = true;
            for (auto w : g.neighbors(v))
                if (c.colors[v] == c.colors[w])
                    return false;
        }
        return std::all_of(used.begin(), used.end(), [] (bool b) { return b; });
    }

    enum class LowerBoundProof
    {
        exhaustive_search,
        rainbow_induction_check
    };

    inline auto proof_name(LowerBoundProof p) -> std::string_view
    {
        return p == LowerBoundProof::exhaustive_search ? "exhaustive-search" : "rainbow-induction-check";
    }

    struct ChromaticCertificate
    {
        std::size_t chi = 0;
        Coloring witness_coloring;
        LowerBoundProof lower_bound_proof = LowerBoundProof::exhaustive_search;
        std::uint64_t nodes = 0;
    };

    inline constexpr std::size_t default_exact_cap = 64;

    namespace detail
    {
        /// Greedy DSATUR colouring: repeatedly colour the vertex seeing the most
        /// distinct colours (ties: higher degree, then lower id) with its lowest free colour.
        inline auto dsatur_greedy(const Graph & g) -> Coloring
        {
            auto n = g.size();
            Coloring result { std::vector<std::uint32_t>(n, 0), 0 };
            std::vector<bool> done(n, false);
            std::vector<std::vector<bool>> seen(n);
            std::vector<std::size_t> saturation(n, 0);

            for (std::size_t step = 0 ; step < n ; ++step) {
                std::optional<Vertex> pick;
                for (Vertex v = 0 ; v < n ; ++v) {
                    if (done[v])
                        continue;
                    if (! pick || saturation[v] > saturation[*pick]
                            || (saturation[v] == saturation[*pick] && g.degree(v) > g.degree(*pick)))
                        pick = v;
                }
                Vertex v = *pick;
                std::uint32_t c = 0;
                while (c < seen[v].size() && seen[v][c])
                    ++c;
                result.colors[v] = c;
                result.count = std::max<std::size_t>(result.count, c + 1);
                done[v] = true;
                for (auto w : g.neighbors(v)) {
                    if (seen[w].size() <= c)
                        seen[w].resize(c + 1, false);
                    if (! seen[w][c]) {
                        seen[w][c] = true;
                        ++saturation[w];
                    }
                }
            }
            return result;
        }

        inline auto greedy_clique_size(const Graph & g) -> std::size_t
        {
            std::size_t best = g.empty() ? 0 : 1;
            for (Vertex v = 0 ; v < g.size() ; ++v) {
                VertexList clique { v };
                VertexList candidates(g.neighbors(v).begin(), g.neighbors(v).end());
                std::sort(candidates.begin(), candidates.end(), [&] (Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
                for (auto w : candidates)
                    if (std::all_of(clique.begin(), clique.end(), [&] (Vertex u) { return g.adjacent(u, w); }))
                        clique.push_back(w);
                best = std::max(best, clique.size());
            }
            return best;
        }

        inline auto is_bipartite(const Graph & g) -> bool
        {
            std::vector<int> side(g.size(), -1);
            for (Vertex s = 0 ; s < g.size() ; ++s) {
                if (side[s] != -1)
                    continue;
                side[s] = 0;
                std::queue<Vertex> queue;
                queue.push(s);
                while (! queue.empty()) {
                    auto v = queue.front();
                    queue.pop();
                    for (auto w : g.neighbors(v)) {
                        if (side[w] == -1) {
                            side[w] = 1 - side[v];
                            queue.push(w);
                        }
                        else if (side[w] == side[v])
                            return false;
                    }
                }
            }
            return true;
        }

        /// Assignment state shared by the exact solver and the rainbow search.
        /// Colours are opened in order (a vertex may only take an already used
        /// colour or the next new one), and are tracked as bitmasks, so at most
        /// 64 colours are supported.
        class ColouringSearch
        {
            public:
                using Mask = std::uint64_t;

                ColouringSearch(const Graph & g, std::size_t max_colours, NodeBudget & budget) :
                    _g(g),
                    _budget(budget),
                    _colour(g.size(), unassigned),
                    _neighbour_counts(g.size(), std::vector<std::uint32_t>(max_colours, 0)),
                    _neighbour_mask(g.size(), 0),
                    _holders(max_colours, 0)
                {
                }

                static constexpr std::uint32_t unassigned = ~std::uint32_t{0};

                auto colour_of(Vertex v) const -> std::uint32_t { return _colour[v]; }
                auto used() const -> std::size_t { return _used; }

                auto assign(Vertex v, std::uint32_t c) -> void
                {
                    _colour[v] = c;
                    if (_holders[c]++ == 0)
                        ++_used;
                    for (auto w : _g.neighbors(v))
                        if (_neighbour_counts[w][c]++ == 0)
                            _neighbour_mask[w] |= Mask{1} << c;
                }

                auto unassign(Vertex v) -> void
                {
                    auto c = _colour[v];
                    for (auto w : _g.neighbors(v))
                        if (--_neighbour_counts[w][c] == 0)
                            _neighbour_mask[w] &= ~(Mask{1} << c);
                    _colour[v] = unassigned;
                    if (--_holders[c] == 0)
                        --_used;
                }

                /// Colours v may take without clashing, under symmetry breaking (at most one new colour).
                auto free_colours(Vertex v, std::size_t limit) const -> Mask
                {
                    auto allowed_count = std::min(limit, _used + 1);
                    Mask all = allowed_count >= 64 ? ~Mask{0} : (Mask{1} << allowed_count) - 1;
                    return all & ~_neighbour_mask[v];
                }

                auto saturation(Vertex v) const -> int { return std::popcount(_neighbour_mask[v]); }

                auto tick() -> void { _budget.tick(); }

            private:
                const Graph & _g;
                NodeBudget & _budget;
                std::vector<std::uint32_t> _colour;
                std::vector<std::vector<std::uint32_t>> _neighbour_counts;
                std::vector<Mask> _neighbour_mask;
                std::vector<std::uint32_t> _holders;
                std::size_t _used = 0;
        };
    }

    /// Exact chromatic number by DSATUR branch and bound, with a witness colouring.
    inline auto chromatic_number(const Graph & g, std::size_t cap = default_exact_cap,
            SearchOptions opts = SearchOptions::exhaustive()) -> ChromaticCertificate
    {
        if (g.size() > cap)
            throw CapExceeded("chromatic_number: graph has " + std::to_string(g.size())
                    + " vertices, exact solver cap is " + std::to_string(cap));
        ChromaticCertificate cert;
        if (g.empty())
            return cert;

        auto best = detail::dsatur_greedy(g);
        auto lower = detail::greedy_clique_size(g);
        if (best.count > lower) {
            NodeBudget budget(opts.resolve(g.size()));
            detail::ColouringSearch search(g, std::min<std::size_t>(best.count, 64), budget);
            auto n = g.size();
            std::size_t coloured = 0;

            // branch: vertex with most distinct neighbour colours, then highest degree
            auto recurse = [&] (auto & self) -> bool {
                if (coloured == n) {
                    best.count = search.used();
                    for (Vertex v = 0 ; v < n ; ++v)
                        best.colors[v] = search.colour_of(v);
                    return best.count == lower;
                }
                std::optional<Vertex> pick;
                for (Vertex v = 0 ; v < n ; ++v) {
                    if (search.colour_of(v) != detail::ColouringSearch::unassigned)
                        continue;
                    if (! pick || search.saturation(v) > search.saturation(*pick)
                            || (search.saturation(v) == search.saturation(*pick) && g.degree(v) > g.degree(*pick)))
                        pick = v;
                }
                Vertex v = *pick;
                auto choices = search.free_colours(v, best.count - 1);
                while (choices) {
                    auto c = static_cast<std::uint32_t>(std::countr_zero(choices));
                    choices &= choices - 1;
                    if (c + 1 >= best.count)
                        break;
                    search.tick();
                    search.assign(v, c);
                    ++coloured;
                    bool done = self(self);
                    --coloured;
                    search.unassign(v);
                    if (done)
                        return true;
                }
                return false;
            };
            recurse(recurse);
            cert.nodes = budget.used();
        }
        cert.chi = best.count;
        cert.witness_coloring = std::move(best);
        return cert;
    }

    struct ChromaticBounds
    {
        std::size_t lower = 0;
        std::size_t upper = 0;
        bool exact = false;
    };

    /// Cheap bounds for graphs of any size: DSATUR greedy above; 1/2/3 below
    /// from "has a vertex", "has an edge", "has an odd cycle". Never exact
    /// unless the two meet.
    inline auto bounds_only(const Graph & g) -> ChromaticBounds
    {
        ChromaticBounds b;
        if (g.empty())
            return { 0, 0, true };
        b.upper = detail::dsatur_greedy(g).count;
        b.lower = 1;
        if (g.edge_count() > 0)
            b.lower = 2;
        if (! detail::is_bipartite(g))
            b.lower = 3;
        b.exact = b.lower == b.upper;
        return b;
    }

    /// Searches for a proper c-colouring in which the neighbourhood of every tip
    /// sees at most k-1 colours. nullopt means every proper c-colouring has a
    /// tip whose neighbourhood sees at least k colours.
    inline auto find_non_rainbow_coloring(const Graft & gf, std::size_t k, std::size_t c,
            std::size_t cap = default_exact_cap, SearchOptions opts = SearchOptions::exhaustive(),
            SearchStats * stats = nullptr) -> std::optional<Coloring>
    {
        auto & g = gf.graph();
        if (g.size() > cap || c > 64)
            throw CapExceeded("find_non_rainbow_coloring: search is capped at " + std::to_string(cap)
                    + " vertices and 64 colours");
        if (k == 0)
            throw InvalidArgument("find_non_rainbow_coloring: k must be positive");
        if (g.empty())
            return Coloring{};
        if (c == 0)
            return std::nullopt;

        using Mask = detail::ColouringSearch::Mask;
        NodeBudget budget(opts.resolve(g.size()));
        detail::ColouringSearch search(g, c, budget);
        auto n = g.size();

        // tips whose neighbourhood contains v
        std::vector<VertexList> watchers(n);
        for (auto t : gf.tips())
            for (auto w : g.neighbors(t))
                watchers[w].push_back(t);
        std::vector<std::vector<std::uint32_t>> seen_count(n, std::vector<std::uint32_t>(c, 0));
        std::vector<Mask> seen(n, 0);
        auto limit = k - 1;

        auto allowed = [&] (Vertex v) -> Mask {
            Mask m = search.free_colours(v, c);
            for (auto t : watchers[v])
                if (static_cast<std::size_t>(std::popcount(seen[t])) >= limit)
                    m &= seen[t];
            return m;
        };

        std::optional<Coloring> result;
        std::size_t coloured = 0;
        auto recurse = [&] (auto & self) -> bool {
            if (coloured == n) {
                Coloring col { std::vector<std::uint32_t>(n), search.used() };
                for (Vertex v = 0 ; v < n ; ++v)
                    col.colors[v] = search.colour_of(v);
                result = std::move(col);
                return true;
            }
            std::optional<Vertex> pick;
            int pick_options = 0;
            for (Vertex v = 0 ; v < n ; ++v) {
                if (search.colour_of(v) != detail::ColouringSearch::unassigned)
                    continue;
                int options = std::popcount(allowed(v));
                if (options == 0)
                    return false;
                if (! pick || options < pick_options || (options == pick_options && g.degree(v) > g.degree(*pick))) {
                    pick = v;
                    pick_options = options;
                }
            }
            Vertex v = *pick;
            auto choices = allowed(v);
            while (choices) {
                auto col = static_cast<std::uint32_t>(std::countr_zero(choices));
                choices &= choices - 1;
                search.tick();
                search.assign(v, col);
                for (auto t : watchers[v])
                    if (seen_count[t][col]++ == 0)
                        seen[t] |= Mask{1} << col;
                ++coloured;
                bool done = self(self);
                --coloured;
                for (auto t : watchers[v])
                    if (--seen_count[t][col] == 0)
                        seen[t] &= ~(Mask{1} << col);
                search.unassign(v);
                if (done)
                    return true;
            }
            return false;
        };
        recurse(recurse);
        if (stats)
            stats->nodes = budget.used();
        return result;
    }
}
