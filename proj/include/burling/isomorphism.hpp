#pragma once

#include <burling/graph.hpp>
#include <burling/search.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

namespace burling
{
    namespace detail
    {
        using Colouring = std::vector<std::uint32_t>;

        /// Colour refinement run on two graphs at once, so that colour ids mean
        /// the same thing on both sides.
        class JointRefiner
        {
            public:
                JointRefiner(const Graph & a, const Graph & b, NodeBudget & budget) :
                    _a(a), _b(b), _budget(budget)
                {
                }

                /// Refines to a stable partition. Returns false if the colour
                /// histograms ever differ (no isomorphism respects the colouring).
                auto refine(Colouring & ca, Colouring & cb, std::size_t & classes) -> bool
                {
                    while (true) {
                        _budget.tick();
                        std::vector<std::tuple<std::vector<std::uint32_t>, int, Vertex>> keyed;
                        keyed.reserve(ca.size() + cb.size());
                        signatures(_a, ca, 0, keyed);
                        signatures(_b, cb, 1, keyed);
                        std::sort(keyed.begin(), keyed.end());

                        std::uint32_t next = 0;
                        std::int64_t balance = 0;
                        for (std::size_t i = 0 ; i < keyed.size() ; ++i) {
                            auto & [sig, side, v] = keyed[i];
                            if (i > 0 && sig != std::get<0>(keyed[i - 1])) {
                                if (balance != 0)
                                    return false;
                                ++next;
                            }
                            balance += side == 0 ? 1 : -1;
                            (side == 0 ? ca : cb)[v] = next;
                        }
                        if (balance != 0)
                            return false;

                        std::size_t now = keyed.empty() ? 0 : next + 1;
                        if (now == classes)
                            return true;
                        classes = now;
                    }
                }

            private:
                static auto signatures(const Graph & g, const Colouring & c, int side,
                        std::vector<std::tuple<std::vector<std::uint32_t>, int, Vertex>> & out) -> void
                {
                    for (Vertex v = 0 ; v < g.size() ; ++v) {
                        std::vector<std::uint32_t> sig;
                        sig.reserve(g.degree(v) + 1);
                        for (auto w : g.neighbors(v))
                            sig.push_back(c[w]);
                        std::sort(sig.begin(), sig.end());
                        sig.insert(sig.begin(), c[v]);
                        out.emplace_back(std::move(sig), side, v);
                    }
                }

                const Graph & _a;
                const Graph & _b;
                NodeBudget & _budget;
        };

        inline auto search_isomorphism(const Graph & a, const Graph & b, JointRefiner & refiner,
                Colouring ca, Colouring cb, std::size_t classes) -> std::optional<VertexList>
        {
            if (! refiner.refine(ca, cb, classes))
                return std::nullopt;

            auto n = a.size();
            if (classes == n) {
                VertexList by_colour(n);
                for (Vertex w = 0 ; w < n ; ++w)
                    by_colour[cb[w]] = w;
                VertexList map(n);
                for (Vertex v = 0 ; v < n ; ++v)
                    map[v] = by_colour[ca[v]];
                for (Vertex v = 0 ; v < n ; ++v) {
                    auto nv = a.neighbors(v);
                    for (auto u : nv)
                        if (! b.adjacent(map[v], map[u]))
                            return std::nullopt;
                }
                return map;
            }

            // target cell: smallest non-singleton colour class
            std::vector<std::uint32_t> count(classes, 0);
            for (auto c : ca)
                ++count[c];
            std::uint32_t cell = 0;
            for (std::uint32_t c = 0 ; c < classes ; ++c)
                if (count[c] > 1 && (count[cell] <= 1 || count[c] < count[cell]))
                    cell = c;

            Vertex v = static_cast<Vertex>(std::find(ca.begin(), ca.end(), cell) - ca.begin());
            auto fresh = static_cast<std::uint32_t>(classes);
            for (Vertex w = 0 ; w < n ; ++w) {
                if (cb[w] != cell)
                    continue;
                auto na = ca, nb = cb;
                na[v] = fresh;
                nb[w] = fresh;
                if (auto found = search_isomorphism(a, b, refiner, std::move(na), std::move(nb), classes + 1))
                    return found;
            }
            return std::nullopt;
        }

        inline auto initial_colours(const Graft & g) -> Colouring
        {
            Colouring c(g.size());
            for (Vertex v = 0 ; v < g.size() ; ++v)
                c[v] = g.is_tip(v) ? 1 : 0;
            return c;
        }
    }

    /// Exact graft isomorphism: a bijection map (vertex of a -> vertex of b)
    /// preserving adjacency both ways and carrying tips(a) onto tips(b).
    /// Colour refinement (tip membership, then neighbour-colour multisets)
    /// with individualisation and backtracking.
    inline auto graft_isomorphic(const Graft & a, const Graft & b, SearchOptions opts = SearchOptions::exhaustive())
        -> std::optional<VertexList>
    {
        if (a.size() != b.size() || a.tips().size() != b.tips().size()
                || a.graph().edge_count() != b.graph().edge_count())
            return std::nullopt;
        if (a.size() == 0)
            return VertexList{};

        NodeBudget budget(opts.resolve(a.size()));
        detail::JointRefiner refiner(a.graph(), b.graph(), budget);
        auto ca = detail::initial_colours(a), cb = detail::initial_colours(b);
        // classes = 0 forces at least two refinement rounds
        auto map = detail::search_isomorphism(a.graph(), b.graph(), refiner, std::move(ca), std::move(cb), 0);
        if (map)
            for (auto t : a.tips())
                if (! b.is_tip((*map)[t]))
                    return std::nullopt;
        return map;
    }

    inline auto graph_isomorphic(const Graph & a, const Graph & b, SearchOptions opts = SearchOptions::exhaustive())
        -> std::optional<VertexList>
    {
        return graft_isomorphic(Graft(a, {}), Graft(b, {}), opts);
    }

    /// Checks that map is a graft isomorphism from a to b.
    inline auto is_graft_isomorphism(const Graft & a, const Graft & b, const VertexList & map) -> bool
    {
        if (a.size() != b.size() || map.size() != a.size())
            return false;
        std::vector<bool> hit(b.size(), false);
        for (auto w : map) {
            if (w >= b.size() || hit[w])
                return false;
            hit[w] = true;
        }
        for (Vertex v = 0 ; v < a.size() ; ++v) {
            if (a.is_tip(v) != b.is_tip(map[v]))
                return false;
            if (a.graph().degree(v) != b.graph().degree(map[v]))
                return false;
            for (auto u : a.graph().neighbors(v))
                if (! b.graph().adjacent(map[v], map[u]))
                    return false;
        }
        return true;
    }
}
