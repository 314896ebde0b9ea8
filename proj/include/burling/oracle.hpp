#pragma once

#include <burling/graph.hpp>
#include <burling/witness.hpp>

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

// Brute-force reference for the pattern detectors: enumerate every vertex
// subset and test the induced subgraph against the pattern's definition.
// Shares nothing with the search code in detectors.hpp.

namespace burling
{
    inline constexpr std::size_t default_oracle_cap = 12;

    namespace oracle_detail
    {
        using Mask = std::uint32_t;

        struct Small
        {
            std::size_t n = 0;
            std::vector<Mask> adj;
            Mask tips = 0;

            auto degree_in(Vertex v, Mask x) const -> int { return std::popcount(adj[v] & x); }

            auto edges_in(Mask x) const -> int
            {
                int twice = 0;
                for (Vertex v = 0 ; v < n ; ++v)
                    if (x >> v & 1u)
                        twice += degree_in(v, x);
                return twice / 2;
            }

            auto connected(Mask x) const -> bool
            {
                if (! x)
                    return false;
                Mask reached = x & -x, frontier = reached;
                while (frontier) {
                    Mask next = 0;
                    for (Vertex v = 0 ; v < n ; ++v)
                        if (frontier >> v & 1u)
                            next |= adj[v] & x;
                    frontier = next & ~reached;
                    reached |= next;
                }
                return reached == x;
            }

            auto max_degree_in(Mask x) const -> int
            {
                int best = 0;
                for (Vertex v = 0 ; v < n ; ++v)
                    if (x >> v & 1u)
                        best = std::max(best, degree_in(v, x));
                return best;
            }

            auto is_path(Mask x) const -> bool
            {
                return x && connected(x) && edges_in(x) == std::popcount(x) - 1 && max_degree_in(x) <= 2;
            }

            auto is_cycle(Mask x) const -> bool
            {
                if (std::popcount(x) < 3 || ! connected(x))
                    return false;
                for (Vertex v = 0 ; v < n ; ++v)
                    if ((x >> v & 1u) && degree_in(v, x) != 2)
                        return false;
                return true;
            }

            /// Vertices of a path or cycle in walking order, starting from `from`.
            auto walk(Mask x, Vertex from) const -> VertexList
            {
                VertexList order { from };
                Mask visited = Mask{1} << from;
                Vertex at = from;
                while (true) {
                    Mask next = adj[at] & x & ~visited;
                    if (! next)
                        break;
                    at = static_cast<Vertex>(std::countr_zero(next));
                    visited |= Mask{1} << at;
                    order.push_back(at);
                }
                return order;
            }

            auto path_order(Mask x) const -> VertexList
            {
                for (Vertex v = 0 ; v < n ; ++v)
                    if ((x >> v & 1u) && degree_in(v, x) <= 1)
                        return walk(x, v);
                return {};
            }
        };

        inline auto theta_paths(const Small & s, Mask x) -> std::optional<std::vector<VertexList>>
        {
            VertexList branch;
            for (Vertex v = 0 ; v < s.n ; ++v)
                if (x >> v & 1u) {
                    int d = s.degree_in(v, x);
                    if (d == 3)
                        branch.push_back(v);
                    else if (d != 2)
                        return std::nullopt;
                }
            if (branch.size() != 2)
                return std::nullopt;
            Vertex a = branch[0], b = branch[1];
            if (s.adj[a] >> b & 1u)
                return std::nullopt;

            Mask rest = x & ~(Mask{1} << a) & ~(Mask{1} << b);
            std::vector<VertexList> paths;
            Mask left = rest;
            while (left) {
                // the component of the lowest remaining vertex
                Mask comp = left & -left, frontier = comp;
                while (frontier) {
                    Mask next = 0;
                    for (Vertex v = 0 ; v < s.n ; ++v)
                        if (frontier >> v & 1u)
                            next |= s.adj[v] & rest;
                    frontier = next & ~comp;
                    comp |= next;
                }
                left &= ~comp;
                if (std::popcount(s.adj[a] & comp) != 1 || std::popcount(s.adj[b] & comp) != 1)
                    return std::nullopt;
                auto start = static_cast<Vertex>(std::countr_zero(s.adj[a] & comp));
                VertexList p { a };
                auto inner = s.walk(comp, start);
                p.insert(p.end(), inner.begin(), inner.end());
                p.push_back(b);
                paths.push_back(std::move(p));
            }
            if (paths.size() != 3)
                return std::nullopt;
            return paths;
        }

        inline auto match(const Small & s, Mask x, Pattern kind, std::size_t k) -> std::optional<Witness>
        {
            auto size = static_cast<std::size_t>(std::popcount(x));
            switch (kind) {
                case Pattern::triangle:
                    if (size == 3 && s.is_cycle(x))
                        return Witness{ kind, 0, std::nullopt, { s.walk(x, std::countr_zero(x)) } };
                    return std::nullopt;

                case Pattern::tip_edge:
                    if (size == 2 && (x & s.tips) == x && s.edges_in(x) == 1)
                        return Witness{ kind, 0, std::nullopt, { s.walk(x, std::countr_zero(x)) } };
                    return std::nullopt;

                case Pattern::hole:
                    if (size >= std::max<std::size_t>(4, k) && s.is_cycle(x))
                        return Witness{ kind, 0, std::nullopt, { s.walk(x, std::countr_zero(x)) } };
                    return std::nullopt;

                case Pattern::wheel:
                    if (size < 5)
                        return std::nullopt;
                    for (Vertex h = 0 ; h < s.n ; ++h) {
                        if (! (x >> h & 1u))
                            continue;
                        Mask rim = x & ~(Mask{1} << h);
                        if (static_cast<std::size_t>(s.degree_in(h, x)) >= k && s.is_cycle(rim))
                            return Witness{ kind, k, h, { s.walk(rim, std::countr_zero(rim)) } };
                    }
                    return std::nullopt;

                case Pattern::fan:
                case Pattern::guarded_fan:
                    for (Vertex f = 0 ; f < s.n ; ++f) {
                        if (! (x >> f & 1u))
                            continue;
                        Mask path = x & ~(Mask{1} << f);
                        if (static_cast<std::size_t>(s.degree_in(f, x)) < k || ! s.is_path(path))
                            continue;
                        auto order = s.path_order(path);
                        if (kind == Pattern::guarded_fan
                                && (order.size() < 2 || ! (s.tips >> order.front() & 1u) || ! (s.tips >> order.back() & 1u)))
                            continue;
                        return Witness{ kind, k, f, { order } };
                    }
                    return std::nullopt;

                case Pattern::mountable_path:
                    if (std::popcount(x & s.tips) >= 3 && s.is_path(x))
                        return Witness{ kind, 0, std::nullopt, { s.path_order(x) } };
                    return std::nullopt;

                case Pattern::theta:
                    if (auto paths = theta_paths(s, x))
                        return Witness{ kind, 0, std::nullopt, *paths };
                    return std::nullopt;
            }
            return std::nullopt;
        }
    }

    /// Does g (with optional tips) contain the pattern as an induced subgraph?
    /// k is the threshold for wheel/fan (guarded-fan always uses 3) and the
    /// minimum length for hole. Exponential: refuses graphs above cap.
    inline auto oracle_contains(const Graph & g, const std::optional<VertexList> & tips, Pattern kind, std::size_t k = 3,
            std::size_t cap = default_oracle_cap) -> std::optional<Witness>
    {
        if (g.size() > cap || g.size() > 31)
            throw CapExceeded("oracle_contains: graph has " + std::to_string(g.size()) + " vertices, cap is "
                    + std::to_string(std::min<std::size_t>(cap, 31)));
        if (kind == Pattern::guarded_fan)
            k = 3;

        oracle_detail::Small s;
        s.n = g.size();
        s.adj.assign(s.n, 0);
        for (auto [u, v] : g.edges()) {
            s.adj[u] |= oracle_detail::Mask{1} << v;
            s.adj[v] |= oracle_detail::Mask{1} << u;
        }
        if (tips)
            for (auto t : *tips) {
                g.check_vertex(t);
                s.tips |= oracle_detail::Mask{1} << t;
            }
        if ((kind == Pattern::guarded_fan || kind == Pattern::mountable_path || kind == Pattern::tip_edge) && ! tips)
            return std::nullopt;

        auto total = oracle_detail::Mask{1} << s.n;
        for (oracle_detail::Mask x = 1 ; x < total ; ++x)
            if (auto w = oracle_detail::match(s, x, kind, k))
                return w;
        return std::nullopt;
    }
}
