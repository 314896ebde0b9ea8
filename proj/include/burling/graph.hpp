#pragma once

#include <burling/bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace burling
{
    using Vertex = std::uint32_t;
    using VertexList = std::vector<Vertex>;
    using Edge = std::pair<Vertex, Vertex>;

    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class InvalidVertex : public Error
    {
        public:
            InvalidVertex(std::uint64_t v, std::size_t n) :
                Error("invalid vertex " + std::to_string(v) + " (graph has " + std::to_string(n) + " vertices)")
            {
            }
    };

    class InvalidArgument : public Error
    {
        public:
            using Error::Error;
    };

    /// A size limit was exceeded (exact solver, oracle, isomorphism or builder caps).
    class CapExceeded : public Error
    {
        public:
            using Error::Error;
    };

    class Graph;

    /// Mutable staging area for a Graph. Edges may be added in any order and
    /// duplicates are merged when build() freezes the result.
    class GraphBuilder
    {
        public:
            explicit GraphBuilder(std::size_t n = 0) : _adj(n) {}

            explicit GraphBuilder(const Graph & g);

            auto size() const -> std::size_t { return _adj.size(); }

            auto add_vertex() -> Vertex
            {
                _adj.emplace_back();
                return static_cast<Vertex>(_adj.size() - 1);
            }

            auto add_vertices(std::size_t count) -> Vertex
            {
                auto first = static_cast<Vertex>(_adj.size());
                _adj.resize(_adj.size() + count);
                return first;
            }

            auto add_edge(Vertex u, Vertex v) -> void
            {
                check(u);
                check(v);
                if (u == v)
                    throw InvalidArgument("self-loop at vertex " + std::to_string(u));
                _adj[u].push_back(v);
                _adj[v].push_back(u);
            }

            /// Neighbours added so far, unsorted and possibly repeated.
            auto raw_neighbors(Vertex v) const -> const VertexList &
            {
                check(v);
                return _adj[v];
            }

            auto build() && -> Graph;
            auto build() const & -> Graph;

        private:
            auto check(Vertex v) const -> void
            {
                if (v >= _adj.size())
                    throw InvalidVertex(v, _adj.size());
            }

            std::vector<VertexList> _adj;
    };

    /// Immutable simple undirected graph on vertices 0..n-1.
    ///
    /// Neighbour lists are always kept sorted. Graphs up to dense_limit vertices
    /// also carry one adjacency bitset per vertex, which the search code uses.
    class Graph
    {
        public:
            static constexpr std::size_t dense_limit = 4096;

            Graph() = default;

            static auto from_edges(std::size_t n, std::span<const Edge> edges) -> Graph
            {
                GraphBuilder b(n);
                for (auto [u, v] : edges)
                    b.add_edge(u, v);
                return std::move(b).build();
            }

            auto size() const -> std::size_t { return _adj.size(); }
            auto empty() const -> bool { return _adj.empty(); }
            auto edge_count() const -> std::size_t { return _edges; }

            auto contains(std::uint64_t v) const -> bool { return v < _adj.size(); }

            auto check_vertex(std::uint64_t v) const -> void
            {
                if (! contains(v))
                    throw InvalidVertex(v, size());
            }

            auto neighbors(Vertex v) const -> std::span<const Vertex>
            {
                check_vertex(v);
                return _adj[v];
            }

            auto degree(Vertex v) const -> std::size_t { return neighbors(v).size(); }

            auto adjacent(Vertex u, Vertex v) const -> bool
            {
                if (u >= _adj.size() || v >= _adj.size())
                    throw InvalidVertex(u >= _adj.size() ? u : v, _adj.size());
                if (! _rows.empty())
                    return _rows[u].test(v);
                return std::binary_search(_adj[u].begin(), _adj[u].end(), v);
            }

            auto has_rows() const -> bool { return _rows.size() == _adj.size(); }

            /// Adjacency bitset of v. Only available when has_rows().
            auto row(Vertex v) const -> const Bitset &
            {
                if (! has_rows())
                    throw CapExceeded("graph with " + std::to_string(size()) + " vertices has no dense adjacency rows (limit "
                            + std::to_string(dense_limit) + ")");
                return _rows[v];
            }

            auto require_rows(const char * what) const -> void
            {
                if (! has_rows())
                    throw CapExceeded(std::string(what) + ": graph has " + std::to_string(size())
                            + " vertices, dense search limit is " + std::to_string(dense_limit));
            }

            /// Sorted edge list with u < v.
            auto edges() const -> std::vector<Edge>
            {
                std::vector<Edge> result;
                result.reserve(_edges);
                for (Vertex u = 0 ; u < _adj.size() ; ++u)
                    for (auto v : _adj[u])
                        if (u < v)
                            result.emplace_back(u, v);
                return result;
            }

            auto empty_set() const -> Bitset { return Bitset(size()); }

            friend auto operator==(const Graph & a, const Graph & b) -> bool { return a._adj == b._adj; }

        private:
            friend class GraphBuilder;

            std::vector<VertexList> _adj;
            std::vector<Bitset> _rows;
            std::size_t _edges = 0;
    };

    inline GraphBuilder::GraphBuilder(const Graph & g) : _adj(g._adj)
    {
    }

    inline auto GraphBuilder::build() && -> Graph
    {
        Graph g;
        g._adj = std::move(_adj);
        _adj.clear();
        std::size_t degree_sum = 0;
        for (auto & list : g._adj) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            degree_sum += list.size();
        }
        g._edges = degree_sum / 2;
        if (g._adj.size() <= Graph::dense_limit) {
            g._rows.assign(g._adj.size(), Bitset(g._adj.size()));
            for (Vertex v = 0 ; v < g._adj.size() ; ++v)
                for (auto w : g._adj[v])
                    g._rows[v].set(w);
        }
        return g;
    }

    inline auto GraphBuilder::build() const & -> Graph
    {
        return GraphBuilder(*this).build();
    }

    /// Sorts, deduplicates and range-checks a vertex set against g.
    inline auto normalize_set(const Graph & g, VertexList x) -> VertexList
    {
        for (auto v : x)
            g.check_vertex(v);
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        return x;
    }

    inline auto to_bitset(const Graph & g, std::span<const Vertex> x) -> Bitset
    {
        Bitset result(g.size());
        for (auto v : x) {
            g.check_vertex(v);
            result.set(v);
        }
        return result;
    }

    /// A graph together with a distinguished set of vertices, its tips.
    class Graft
    {
        public:
            Graft() = default;

            Graft(Graph graph, VertexList tips) :
                _graph(std::move(graph)),
                _tips(normalize_set(_graph, std::move(tips))),
                _is_tip(_graph.size(), false)
            {
                for (auto t : _tips)
                    _is_tip[t] = true;
            }

            auto graph() const -> const Graph & { return _graph; }
            auto tips() const -> const VertexList & { return _tips; }
            auto size() const -> std::size_t { return _graph.size(); }

            auto is_tip(Vertex v) const -> bool { return v < _is_tip.size() && _is_tip[v]; }

            auto tip_set() const -> Bitset { return to_bitset(_graph, _tips); }

            friend auto operator==(const Graft & a, const Graft & b) -> bool
            {
                return a._graph == b._graph && a._tips == b._tips;
            }

        private:
            Graph _graph;
            VertexList _tips;
            std::vector<bool> _is_tip;
    };

    /// The result of inducing or deleting: the new graph, and for each new id the old id.
    struct Relabelled
    {
        Graph graph;
        VertexList original;

        /// old id -> new id, if the vertex survived.
        auto new_id(Vertex old) const -> std::optional<Vertex>
        {
            auto it = std::lower_bound(original.begin(), original.end(), old);
            if (it == original.end() || *it != old)
                return std::nullopt;
            return static_cast<Vertex>(it - original.begin());
        }
    };

    inline auto induced_subgraph(const Graph & g, VertexList x) -> Relabelled
    {
        x = normalize_set(g, std::move(x));
        std::vector<std::int64_t> new_id(g.size(), -1);
        for (std::size_t i = 0 ; i < x.size() ; ++i)
            new_id[x[i]] = static_cast<std::int64_t>(i);

        GraphBuilder b(x.size());
        for (std::size_t i = 0 ; i < x.size() ; ++i)
            for (auto w : g.neighbors(x[i]))
                if (new_id[w] > static_cast<std::int64_t>(i))
                    b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(new_id[w]));
        return Relabelled{ std::move(b).build(), std::move(x) };
    }

    inline auto delete_vertices(const Graph & g, VertexList x) -> Relabelled
    {
        x = normalize_set(g, std::move(x));
        VertexList keep;
        keep.reserve(g.size() - x.size());
        auto it = x.begin();
        for (Vertex v = 0 ; v < g.size() ; ++v) {
            if (it != x.end() && *it == v)
                ++it;
            else
                keep.push_back(v);
        }
        return induced_subgraph(g, std::move(keep));
    }

    /// Induced subgraft (G[X], X ∩ T).
    inline auto induced_subgraft(const Graft & gf, VertexList x) -> std::pair<Graft, VertexList>
    {
        auto sub = induced_subgraph(gf.graph(), std::move(x));
        VertexList tips;
        for (Vertex i = 0 ; i < sub.original.size() ; ++i)
            if (gf.is_tip(sub.original[i]))
                tips.push_back(i);
        return { Graft(std::move(sub.graph), std::move(tips)), std::move(sub.original) };
    }

    inline auto neighborhood(const Graph & g, Vertex v) -> VertexList
    {
        auto n = g.neighbors(v);
        return VertexList(n.begin(), n.end());
    }

    inline auto is_stable_set(const Graph & g, std::span<const Vertex> x) -> bool
    {
        for (auto v : x)
            g.check_vertex(v);
        for (std::size_t i = 0 ; i < x.size() ; ++i)
            for (std::size_t j = i + 1 ; j < x.size() ; ++j)
                if (g.adjacent(x[i], x[j]))
                    return false;
        return true;
    }

    /// True iff seq, in order, is an induced path of g. Throws on repeated vertices.
    inline auto is_induced_path(const Graph & g, std::span<const Vertex> seq) -> bool
    {
        for (auto v : seq)
            g.check_vertex(v);
        VertexList sorted(seq.begin(), seq.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("path has a repeated vertex");

        for (std::size_t i = 0 ; i < seq.size() ; ++i)
            for (std::size_t j = i + 1 ; j < seq.size() ; ++j)
                if (g.adjacent(seq[i], seq[j]) != (j == i + 1))
                    return false;
        return true;
    }

    /// True iff seq, in cyclic order, is an induced cycle (hole candidate) of g.
    inline auto is_induced_cycle(const Graph & g, std::span<const Vertex> seq) -> bool
    {
        if (seq.size() < 3)
            return false;
        for (auto v : seq)
            g.check_vertex(v);
        VertexList sorted(seq.begin(), seq.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("cycle has a repeated vertex");

        auto n = seq.size();
        for (std::size_t i = 0 ; i < n ; ++i)
            for (std::size_t j = i + 1 ; j < n ; ++j) {
                bool consecutive = (j == i + 1) || (i == 0 && j == n - 1);
                if (g.adjacent(seq[i], seq[j]) != consecutive)
                    return false;
            }
        return true;
    }

    namespace named
    {
        inline auto path(std::size_t n) -> Graph
        {
            GraphBuilder b(n);
            for (Vertex v = 0 ; v + 1 < n ; ++v)
                b.add_edge(v, v + 1);
            return std::move(b).build();
        }

        inline auto cycle(std::size_t n) -> Graph
        {
            GraphBuilder b(n);
            for (Vertex v = 0 ; v < n ; ++v)
                b.add_edge(v, static_cast<Vertex>((v + 1) % n));
            return std::move(b).build();
        }

        inline auto complete(std::size_t n) -> Graph
        {
            GraphBuilder b(n);
            for (Vertex u = 0 ; u < n ; ++u)
                for (Vertex v = u + 1 ; v < n ; ++v)
                    b.add_edge(u, v);
            return std::move(b).build();
        }

        inline auto complete_bipartite(std::size_t a, std::size_t c) -> Graph
        {
            GraphBuilder b(a + c);
            for (Vertex u = 0 ; u < a ; ++u)
                for (Vertex v = 0 ; v < c ; ++v)
                    b.add_edge(u, static_cast<Vertex>(a + v));
            return std::move(b).build();
        }
    }
}
