#pragma once

#include <burling/burling.hpp>

#include <algorithm>
#include <numeric>
#include <random>

namespace burling::fixtures
{
    inline auto random_graph(std::mt19937_64 & rng, std::size_t n, double density) -> Graph
    {
        std::bernoulli_distribution coin(density);
        GraphBuilder b(n);
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                if (coin(rng))
                    b.add_edge(u, v);
        return std::move(b).build();
    }

    inline auto random_subset(std::mt19937_64 & rng, std::size_t n, std::size_t max_size) -> VertexList
    {
        VertexList all(n);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        auto size = std::uniform_int_distribution<std::size_t>(0, std::min(n, max_size))(rng);
        all.resize(size);
        std::sort(all.begin(), all.end());
        return all;
    }

    inline auto relabel(const Graph & g, const VertexList & perm) -> Graph
    {
        GraphBuilder b(g.size());
        for (auto [u, v] : g.edges())
            b.add_edge(perm[u], perm[v]);
        return std::move(b).build();
    }

    inline auto relabel(const Graft & g, const VertexList & perm) -> Graft
    {
        VertexList tips;
        for (auto t : g.tips())
            tips.push_back(perm[t]);
        return Graft(relabel(g.graph(), perm), tips);
    }

    inline auto random_permutation(std::mt19937_64 & rng, std::size_t n) -> VertexList
    {
        VertexList perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        return perm;
    }

    /// Tries every permutation.
    inline auto brute_isomorphic(const Graft & a, const Graft & b) -> bool
    {
        if (a.size() != b.size() || a.graph().edge_count() != b.graph().edge_count() || a.tips().size() != b.tips().size())
            return false;
        VertexList perm(a.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            if (is_graft_isomorphism(a, b, perm))
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    /// C5 as 0-1-2-3-4-0 with tips 0 and 2.
    inline auto c5_two_tips() -> Graft
    {
        return Graft(named::cycle(5), { 0, 2 });
    }

    /// Adds a vertex adjacent to every listed vertex.
    inline auto with_hub(const Graph & g, const VertexList & rim) -> Graph
    {
        GraphBuilder b(g);
        auto h = b.add_vertex();
        for (auto v : rim)
            b.add_edge(h, v);
        return std::move(b).build();
    }
}
