#pragma once

#include <burling/graph.hpp>

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace burling
{
    /// An operation was applied to a vertex outside the tip set.
    class TipViolation : public Error
    {
        public:
            using Error::Error;
    };

    /// join: |X| differs from the number of tips of the joined graft.
    class ArityError : public Error
    {
        public:
            using Error::Error;
    };

    /// join: the vertices of X do not all have the same neighbourhood.
    class HomogeneityError : public Error
    {
        public:
            using Error::Error;
    };

    enum class OpKind
    {
        pendent,
        clone,
        join
    };

    inline auto op_name(OpKind op) -> std::string_view
    {
        switch (op) {
            case OpKind::pendent: return "pendent";
            case OpKind::clone:   return "clone";
            case OpKind::join:    return "join";
        }
        return "?";
    }

    /// Audit record of one graft operation.
    struct OpRecord
    {
        OpKind op = OpKind::pendent;
        /// pendent/clone: {t}; join: X in sorted order
        VertexList targets;
        /// fresh vertex ids in the output
        VertexList created;
        /// join only: (tip of the joined graft, vertex of X it was identified with)
        std::vector<std::pair<Vertex, Vertex>> identified;

        friend auto operator==(const OpRecord &, const OpRecord &) -> bool = default;
    };

    /// Applies pendent/clone/join in place. The free functions below are the
    /// value-semantics interface; this is what they (and the Burling builder,
    /// which applies tens of thousands of operations) run on.
    class GraftBuilder
    {
        public:
            explicit GraftBuilder(const Graft & g) :
                _graph(g.graph()),
                _tip(g.size(), 0)
            {
                for (auto t : g.tips())
                    _tip[t] = 1;
            }

            auto size() const -> std::size_t { return _graph.size(); }

            auto is_tip(Vertex v) const -> bool { return v < _tip.size() && _tip[v]; }

            auto pendent(Vertex t) -> OpRecord
            {
                check_tip(t, "pendent");
                Vertex leaf = add_vertex(false);
                _graph.add_edge(t, leaf);
                _tip[t] = 0;
                _tip[leaf] = 1;
                return OpRecord{ OpKind::pendent, { t }, { leaf }, {} };
            }

            auto clone(Vertex t) -> OpRecord
            {
                check_tip(t, "clone");
                VertexList nbrs = _graph.raw_neighbors(t);
                Vertex twin = add_vertex(true);
                for (auto w : nbrs)
                    _graph.add_edge(twin, w);
                return OpRecord{ OpKind::clone, { t }, { twin }, {} };
            }

            /// Glues other onto x: the i-th smallest tip of other is identified with
            /// the i-th smallest vertex of x. Tips are unchanged.
            auto join(VertexList x, const Graft & other) -> OpRecord
            {
                std::sort(x.begin(), x.end());
                if (std::adjacent_find(x.begin(), x.end()) != x.end())
                    throw InvalidArgument("join: X has a repeated vertex");
                for (auto v : x) {
                    if (v >= size())
                        throw InvalidVertex(v, size());
                    if (! _tip[v])
                        throw TipViolation("join: vertex " + std::to_string(v) + " of X is not a tip");
                }
                if (x.size() != other.tips().size())
                    throw ArityError("join: |X| = " + std::to_string(x.size()) + " but the joined graft has "
                            + std::to_string(other.tips().size()) + " tips");
                if (! x.empty()) {
                    auto reference = sorted_neighbors(x.front());
                    for (auto v : x)
                        if (sorted_neighbors(v) != reference)
                            throw HomogeneityError("join: vertices " + std::to_string(x.front()) + " and "
                                    + std::to_string(v) + " of X have different neighbourhoods");
                }

                OpRecord rec { OpKind::join, x, {}, {} };
                std::vector<Vertex> image(other.size());
                std::size_t next_tip = 0;
                for (Vertex v = 0 ; v < other.size() ; ++v) {
                    if (other.is_tip(v)) {
                        image[v] = x[next_tip++];
                        rec.identified.emplace_back(v, image[v]);
                    }
                    else {
                        image[v] = add_vertex(false);
                        rec.created.push_back(image[v]);
                    }
                }
                for (auto [u, v] : other.graph().edges())
                    _graph.add_edge(image[u], image[v]);
                return rec;
            }

            auto build() const -> Graft
            {
                VertexList tips;
                for (Vertex v = 0 ; v < _tip.size() ; ++v)
                    if (_tip[v])
                        tips.push_back(v);
                return Graft(_graph.build(), std::move(tips));
            }

        private:
            auto add_vertex(bool tip) -> Vertex
            {
                _tip.push_back(tip ? 1 : 0);
                return _graph.add_vertex();
            }

            auto check_tip(Vertex t, const char * op) const -> void
            {
                if (t >= size())
                    throw InvalidVertex(t, size());
                if (! _tip[t])
                    throw TipViolation(std::string(op) + ": vertex " + std::to_string(t) + " is not a tip");
            }

            auto sorted_neighbors(Vertex v) const -> VertexList
            {
                auto n = _graph.raw_neighbors(v);
                std::sort(n.begin(), n.end());
                n.erase(std::unique(n.begin(), n.end()), n.end());
                return n;
            }

            GraphBuilder _graph;
            std::vector<char> _tip;
    };

    /// Adds a leaf t' adjacent only to t; t' replaces t in the tips.
    inline auto pendent(const Graft & g, Vertex t) -> std::pair<Graft, OpRecord>
    {
        GraftBuilder b(g);
        auto rec = b.pendent(t);
        return { b.build(), std::move(rec) };
    }

    /// Adds a tip t' with exactly the neighbourhood of t (t' is not adjacent to t).
    inline auto clone(const Graft & g, Vertex t) -> std::pair<Graft, OpRecord>
    {
        GraftBuilder b(g);
        auto rec = b.clone(t);
        return { b.build(), std::move(rec) };
    }

    /// Disjoint union of g1 and g2 with the tips of g2 identified onto x ⊆ tips(g1).
    inline auto join(const Graft & g1, VertexList x, const Graft & g2) -> std::pair<Graft, OpRecord>
    {
        GraftBuilder b(g1);
        auto rec = b.join(std::move(x), g2);
        return { b.build(), std::move(rec) };
    }

    /// Tips of g grouped by identical neighbourhood; only such groups may serve as X in join.
    inline auto homogeneous_tip_classes(const Graft & g) -> std::vector<VertexList>
    {
        std::vector<std::pair<VertexList, Vertex>> keyed;
        for (auto t : g.tips()) {
            auto n = g.graph().neighbors(t);
            keyed.emplace_back(VertexList(n.begin(), n.end()), t);
        }
        std::sort(keyed.begin(), keyed.end());
        std::vector<VertexList> classes;
        for (std::size_t i = 0 ; i < keyed.size() ; ++i) {
            if (i == 0 || keyed[i].first != keyed[i - 1].first)
                classes.emplace_back();
            classes.back().push_back(keyed[i].second);
        }
        return classes;
    }
}
