#pragma once

#include <burling/graft_ops.hpp>
#include <burling/graph.hpp>
#include <burling/isomorphism.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace burling
{
    /// A graph with an ordered list of stable sets.
    class StablePair
    {
        public:
            StablePair(Graph graph, std::vector<VertexList> stables) :
                _graph(std::move(graph))
            {
                _stables.reserve(stables.size());
                for (auto & s : stables) {
                    auto set = normalize_set(_graph, std::move(s));
                    if (! is_stable_set(_graph, set))
                        throw InvalidArgument("stable-set list contains a set that is not stable");
                    _stables.push_back(std::move(set));
                }
            }

            auto graph() const -> const Graph & { return _graph; }
            auto stables() const -> const std::vector<VertexList> & { return _stables; }

        private:
            Graph _graph;
            std::vector<VertexList> _stables;
    };

    inline constexpr int default_level_cap = 5;

    /// One application of NEXT. Vertex layout of the result: the input graph,
    /// then one copy H_S per stable set S (in list order), then the vertices
    /// v_{S,T} in (S, T) order. The new stable sets are all S ∪ T' first, then
    /// all S ∪ {v_{S,T}}, each group in (S, T) order, where T' is the copy of T in H_S.
    inline auto next_pair(const StablePair & p) -> StablePair
    {
        auto & g = p.graph();
        auto & ss = p.stables();
        if (ss.empty())
            throw InvalidArgument("next_pair: stable-set list is empty");

        std::size_t n = g.size(), s = ss.size();
        GraphBuilder b(n + s * n + s * s);
        auto base_edges = g.edges();
        auto copy_offset = [&] (std::size_t i) { return static_cast<Vertex>(n + i * n); };
        auto extra = [&] (std::size_t i, std::size_t j) { return static_cast<Vertex>(n + s * n + i * s + j); };

        for (std::size_t i = 0 ; i <= s ; ++i) {
            Vertex off = i == 0 ? 0 : copy_offset(i - 1);
            for (auto [u, v] : base_edges)
                b.add_edge(off + u, off + v);
        }
        for (std::size_t i = 0 ; i < s ; ++i)
            for (std::size_t j = 0 ; j < s ; ++j)
                for (auto t : ss[j])
                    b.add_edge(extra(i, j), copy_offset(i) + t);

        std::vector<VertexList> out;
        out.reserve(2 * s * s);
        for (std::size_t i = 0 ; i < s ; ++i)
            for (std::size_t j = 0 ; j < s ; ++j) {
                VertexList set = ss[i];
                for (auto t : ss[j])
                    set.push_back(copy_offset(i) + t);
                out.push_back(std::move(set));
            }
        for (std::size_t i = 0 ; i < s ; ++i)
            for (std::size_t j = 0 ; j < s ; ++j) {
                VertexList set = ss[i];
                set.push_back(extra(i, j));
                out.push_back(std::move(set));
            }
        return StablePair(std::move(b).build(), std::move(out));
    }

    inline auto check_level(int k, int cap, const char * what) -> void
    {
        if (k < 1 || k > cap)
            throw CapExceeded(std::string(what) + ": level " + std::to_string(k) + " is outside 1.." + std::to_string(cap));
    }

    /// (G'_k, S_k): NEXT applied k-1 times to (K1, [{0}]).
    inline auto burling_pair(int k, int cap = default_level_cap) -> StablePair
    {
        check_level(k, cap, "burling_pair");
        StablePair p(Graph::from_edges(1, {}), { { 0 } });
        for (int level = 1 ; level < k ; ++level)
            p = next_pair(p);
        return p;
    }

    /// Adds one tip per stable set, adjacent to exactly that set.
    inline auto graft_from_pair(const StablePair & p) -> Graft
    {
        GraphBuilder b(p.graph());
        VertexList tips;
        for (auto & s : p.stables()) {
            Vertex v = b.add_vertex();
            tips.push_back(v);
            for (auto w : s)
                b.add_edge(v, w);
        }
        return Graft(std::move(b).build(), std::move(tips));
    }

    enum class Origin
    {
        base,
        clone_of,
        pendant_of,
        copy
    };

    inline auto origin_name(Origin o) -> std::string_view
    {
        switch (o) {
            case Origin::base:       return "base";
            case Origin::clone_of:   return "clone-of";
            case Origin::pendant_of: return "pendant-of";
            case Origin::copy:       return "copy";
        }
        return "?";
    }

    /// Where a vertex of a level came from, relative to the previous level.
    ///   base        source = vertex of the previous level
    ///   clone-of    source = tip that was cloned
    ///   pendant-of  source = vertex the leaf hangs from (template only)
    ///   copy        copy_of = tip u indexing the copy H_u, source = template vertex
    /// identified_with is set for vertices of X_u: the template tip glued onto them.
    struct Provenance
    {
        Origin origin = Origin::base;
        Vertex source = 0;
        std::optional<Vertex> copy_of;
        std::optional<Vertex> identified_with;

        friend auto operator==(const Provenance &, const Provenance &) -> bool = default;
    };

    /// The operations that turn (G_level, T_level) into (G_level+1, T_level+1).
    struct LevelTrace
    {
        int level = 1;
        /// clones then pendents applied to a copy of G_level to get the template H'
        std::vector<OpRecord> template_ops;
        Graft template_graft;
        std::vector<Provenance> template_provenance;
        /// clones growing each tip u into X_u, then one join of H' onto each X_u
        std::vector<OpRecord> ops;
    };

    struct ConstructionTrace
    {
        int k = 1;
        std::vector<LevelTrace> levels;
        /// provenance of every vertex of G_k relative to G_{k-1} (all base when k = 1)
        std::vector<Provenance> provenance;
    };

    inline auto first_graft() -> Graft
    {
        return Graft(named::complete(2), { 1 });
    }

    namespace detail
    {
        inline auto apply(GraftBuilder & b, const OpRecord & rec, const Graft * joined) -> OpRecord
        {
            switch (rec.op) {
                case OpKind::pendent: return b.pendent(rec.targets.at(0));
                case OpKind::clone:   return b.clone(rec.targets.at(0));
                case OpKind::join:
                    if (! joined)
                        throw InvalidArgument("trace: join without a graft to join");
                    return b.join(rec.targets, *joined);
            }
            throw InvalidArgument("trace: unknown operation");
        }

        struct LevelResult
        {
            Graft graft;
            LevelTrace trace;
            std::vector<Provenance> provenance;
        };

        /// One level of the graft construction, recording every operation.
        inline auto next_graft(const Graft & g, int level) -> LevelResult
        {
            LevelTrace trace;
            trace.level = level;
            auto & tips = g.tips();
            std::size_t n = g.size(), t = tips.size();

            // steps 1-2: the template H' = G with every tip v cloned to v_u and v_u given a pendant leaf
            GraftBuilder hb(g);
            auto & hprov = trace.template_provenance;
            for (Vertex v = 0 ; v < n ; ++v)
                hprov.push_back(Provenance{ Origin::base, v, std::nullopt, std::nullopt });
            VertexList twins;
            for (auto v : tips) {
                trace.template_ops.push_back(hb.clone(v));
                twins.push_back(trace.template_ops.back().created.at(0));
                hprov.push_back(Provenance{ Origin::clone_of, v, std::nullopt, std::nullopt });
            }
            for (auto v : twins) {
                trace.template_ops.push_back(hb.pendent(v));
                hprov.push_back(Provenance{ Origin::pendant_of, v, std::nullopt, std::nullopt });
            }
            trace.template_graft = hb.build();

            // step 3a: X_u = u plus 2|T|-1 clones of u
            GraftBuilder gb(g);
            std::vector<Provenance> prov;
            for (Vertex v = 0 ; v < n ; ++v)
                prov.push_back(Provenance{ Origin::base, v, std::nullopt, std::nullopt });
            std::vector<VertexList> groups;
            for (auto u : tips) {
                VertexList x { u };
                for (std::size_t i = 0 ; i + 1 < 2 * t ; ++i) {
                    trace.ops.push_back(gb.clone(u));
                    x.push_back(trace.ops.back().created.at(0));
                    prov.push_back(Provenance{ Origin::clone_of, u, std::nullopt, std::nullopt });
                }
                groups.push_back(std::move(x));
            }

            // step 3b: join a fresh copy of H' onto each X_u, in increasing u
            for (std::size_t i = 0 ; i < tips.size() ; ++i) {
                trace.ops.push_back(gb.join(groups[i], trace.template_graft));
                auto & rec = trace.ops.back();
                for (auto [htip, x] : rec.identified)
                    prov[x].identified_with = htip;
                std::size_t c = 0;
                for (Vertex h = 0 ; h < trace.template_graft.size() ; ++h)
                    if (! trace.template_graft.is_tip(h)) {
                        // created ids are consecutive and follow the current end
                        prov.push_back(Provenance{ Origin::copy, h, tips[i], std::nullopt });
                        if (rec.created.at(c++) != prov.size() - 1)
                            throw Error("next_graft: unexpected vertex numbering");
                    }
            }
            return { gb.build(), std::move(trace), std::move(prov) };
        }
    }

    /// (G_k, T_k) built from (K2, {1}) using only pendent/clone/join.
    inline auto build_graft(int k, int cap = default_level_cap) -> std::pair<Graft, ConstructionTrace>
    {
        check_level(k, cap, "build_graft");
        ConstructionTrace trace;
        trace.k = k;
        Graft g = first_graft();
        for (Vertex v = 0 ; v < g.size() ; ++v)
            trace.provenance.push_back(Provenance{ Origin::base, v, std::nullopt, std::nullopt });
        for (int level = 1 ; level < k ; ++level) {
            auto step = detail::next_graft(g, level);
            g = std::move(step.graft);
            trace.levels.push_back(std::move(step.trace));
            trace.provenance = std::move(step.provenance);
        }
        return { std::move(g), std::move(trace) };
    }

    /// Re-applies every recorded operation through the graft operations and
    /// checks that each produces exactly the recorded result.
    inline auto replay_trace(const ConstructionTrace & trace) -> Graft
    {
        Graft g = first_graft();
        for (auto & level : trace.levels) {
            GraftBuilder hb(g);
            for (auto & rec : level.template_ops)
                if (detail::apply(hb, rec, nullptr) != rec)
                    throw Error("trace replay diverged in the template of level " + std::to_string(level.level));
            auto h = hb.build();
            if (! (h == level.template_graft))
                throw Error("trace replay produced a different template at level " + std::to_string(level.level));

            GraftBuilder gb(g);
            for (auto & rec : level.ops)
                if (detail::apply(gb, rec, &h) != rec)
                    throw Error("trace replay diverged at level " + std::to_string(level.level));
            g = gb.build();
        }
        return g;
    }

    inline auto to_json(const OpRecord & rec) -> nlohmann::json
    {
        nlohmann::json j;
        j["op"] = op_name(rec.op);
        j["targets"] = rec.targets;
        j["created"] = rec.created;
        if (rec.op == OpKind::join)
            j["identified"] = rec.identified;
        return j;
    }

    inline auto to_json(const Provenance & p) -> nlohmann::json
    {
        nlohmann::json j;
        j["origin"] = origin_name(p.origin);
        j["source"] = p.source;
        if (p.copy_of)
            j["copy_of"] = *p.copy_of;
        if (p.identified_with)
            j["identified_with"] = *p.identified_with;
        return j;
    }

    /// Structured text form of a trace; the template grafts are summarised by size.
    inline auto to_json(const ConstructionTrace & trace) -> nlohmann::json
    {
        nlohmann::json j;
        j["k"] = trace.k;
        j["levels"] = nlohmann::json::array();
        for (auto & level : trace.levels) {
            nlohmann::json l;
            l["level"] = level.level;
            l["template_size"] = { { "n", level.template_graft.size() }, { "tips", level.template_graft.tips().size() } };
            l["template_ops"] = nlohmann::json::array();
            for (auto & rec : level.template_ops)
                l["template_ops"].push_back(to_json(rec));
            l["template_provenance"] = nlohmann::json::array();
            for (auto & p : level.template_provenance)
                l["template_provenance"].push_back(to_json(p));
            l["ops"] = nlohmann::json::array();
            for (auto & rec : level.ops)
                l["ops"].push_back(to_json(rec));
            j["levels"].push_back(std::move(l));
        }
        j["provenance"] = nlohmann::json::array();
        for (auto & p : trace.provenance)
            j["provenance"].push_back(to_json(p));
        return j;
    }

    inline constexpr int default_equivalence_cap = 3;

    /// Builds both constructions at level k and returns a graft isomorphism
    /// from graft_from_pair(burling_pair(k)) to build_graft(k), or nullopt if
    /// none exists. Level 4 (309 vertices) needs allow_large.
    inline auto check_equivalence(int k, bool allow_large = false) -> std::optional<VertexList>
    {
        check_level(k, allow_large ? 4 : default_equivalence_cap, "check_equivalence");
        auto from_pair = graft_from_pair(burling_pair(k));
        auto built = build_graft(k).first;
        return graft_isomorphic(from_pair, built);
    }
}
