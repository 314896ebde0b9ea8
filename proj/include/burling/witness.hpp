#pragma once

#include <burling/graph.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace burling
{
    enum class Pattern
    {
        triangle,
        tip_edge,
        hole,
        wheel,
        theta,
        fan,
        guarded_fan,
        mountable_path
    };

    inline auto pattern_name(Pattern p) -> std::string_view
    {
        switch (p) {
            case Pattern::triangle:       return "triangle";
            case Pattern::tip_edge:       return "tip-edge";
            case Pattern::hole:           return "hole";
            case Pattern::wheel:          return "wheel";
            case Pattern::theta:          return "theta";
            case Pattern::fan:            return "fan";
            case Pattern::guarded_fan:    return "guarded-fan";
            case Pattern::mountable_path: return "mountable-path";
        }
        return "?";
    }

    inline auto parse_pattern(std::string_view s) -> Pattern
    {
        for (auto p : { Pattern::triangle, Pattern::tip_edge, Pattern::hole, Pattern::wheel, Pattern::theta,
                Pattern::fan, Pattern::guarded_fan, Pattern::mountable_path })
            if (pattern_name(p) == s)
                return p;
        throw InvalidArgument("unknown pattern '" + std::string(s) + "'");
    }

    /// Certificate for an induced occurrence of a pattern.
    ///
    /// Layout by kind:
    ///   triangle        chains = {[a, b, c]}
    ///   tip-edge        chains = {[u, v]}, both tips and adjacent
    ///   hole            chains = {cycle order}
    ///   wheel           apex = hub, chains = {rim in cycle order}, k = hub threshold
    ///   theta           chains = three paths, all from the same branch vertex to the other
    ///   fan             apex = pivot, chains = {path order}, k = pivot threshold
    ///   guarded-fan     as fan, k = 3, path endpoints are tips
    ///   mountable-path  chains = {path order}
    struct Witness
    {
        Pattern kind = Pattern::triangle;
        std::size_t k = 0;
        std::optional<Vertex> apex;
        std::vector<VertexList> chains;

        auto vertices() const -> VertexList
        {
            VertexList result;
            if (apex)
                result.push_back(*apex);
            for (auto & c : chains)
                result.insert(result.end(), c.begin(), c.end());
            std::sort(result.begin(), result.end());
            result.erase(std::unique(result.begin(), result.end()), result.end());
            return result;
        }

        friend auto operator==(const Witness &, const Witness &) -> bool = default;
    };

    inline auto to_json(const Witness & w) -> nlohmann::json
    {
        nlohmann::json j;
        j["kind"] = pattern_name(w.kind);
        if (w.k != 0)
            j["k"] = w.k;
        if (w.apex)
            j["apex"] = *w.apex;
        j["chains"] = w.chains;
        return j;
    }

    inline auto witness_from_json(const nlohmann::json & j) -> Witness
    {
        try {
            Witness w;
            w.kind = parse_pattern(j.at("kind").get<std::string>());
            if (j.contains("k"))
                w.k = j.at("k").get<std::size_t>();
            if (j.contains("apex"))
                w.apex = j.at("apex").get<Vertex>();
            w.chains = j.at("chains").get<std::vector<VertexList>>();
            return w;
        }
        catch (const nlohmann::json::exception & e) {
            throw InvalidArgument(std::string("malformed witness: ") + e.what());
        }
    }

    /// Single-line text form, e.g. {"apex":5,"chains":[[0,1,2,3,4]],"k":3,"kind":"wheel"}
    inline auto to_string(const Witness & w) -> std::string
    {
        return to_json(w).dump();
    }

    inline auto parse_witness(std::string_view text) -> Witness
    {
        auto j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded())
            throw InvalidArgument("witness is not valid JSON");
        return witness_from_json(j);
    }

    namespace detail
    {
        inline auto count_hits(const Graph & g, Vertex apex, std::span<const Vertex> chain) -> std::size_t
        {
            return std::count_if(chain.begin(), chain.end(), [&] (Vertex v) { return g.adjacent(apex, v); });
        }

        inline auto all_tips(std::span<const Vertex> xs, const Bitset & tips) -> bool
        {
            return std::all_of(xs.begin(), xs.end(), [&] (Vertex v) { return tips.test(v); });
        }
    }

    /// Replays w against g (and tips, for tip-aware patterns). True iff the
    /// witness vertices induce exactly the claimed pattern.
    inline auto validate_witness(const Graph & g, const std::optional<VertexList> & tips, const Witness & w) -> bool
    {
        if (w.apex)
            g.check_vertex(*w.apex);
        std::size_t listed = w.apex ? 1 : 0;
        for (auto & c : w.chains) {
            for (auto v : c)
                g.check_vertex(v);
            listed += c.size();
        }

        Bitset tip_bits(g.size());
        if (tips)
            for (auto t : *tips) {
                g.check_vertex(t);
                tip_bits.set(t);
            }

        auto distinct = [&] () { return w.vertices().size() == listed; };
        auto single_chain = [&] () { return w.chains.size() == 1; };

        try {
            switch (w.kind) {
                case Pattern::triangle: {
                    if (! single_chain() || w.apex || w.chains[0].size() != 3 || ! distinct())
                        return false;
                    auto & c = w.chains[0];
                    return g.adjacent(c[0], c[1]) && g.adjacent(c[1], c[2]) && g.adjacent(c[0], c[2]);
                }

                case Pattern::tip_edge: {
                    if (! tips || ! single_chain() || w.apex || w.chains[0].size() != 2 || ! distinct())
                        return false;
                    auto & c = w.chains[0];
                    return g.adjacent(c[0], c[1]) && detail::all_tips(c, tip_bits);
                }

                case Pattern::hole:
                    if (! single_chain() || w.apex || w.chains[0].size() < 4 || ! distinct())
                        return false;
                    return is_induced_cycle(g, w.chains[0]);

                case Pattern::wheel:
                    if (! single_chain() || ! w.apex || w.k < 3 || w.chains[0].size() < 4 || ! distinct())
                        return false;
                    return is_induced_cycle(g, w.chains[0]) && detail::count_hits(g, *w.apex, w.chains[0]) >= w.k;

                case Pattern::fan:
                case Pattern::guarded_fan: {
                    if (! single_chain() || ! w.apex || w.k < 3 || ! distinct())
                        return false;
                    auto & c = w.chains[0];
                    if (! is_induced_path(g, c) || detail::count_hits(g, *w.apex, c) < w.k)
                        return false;
                    if (w.kind == Pattern::guarded_fan)
                        return tips.has_value() && tip_bits.test(c.front()) && tip_bits.test(c.back());
                    return true;
                }

                case Pattern::mountable_path: {
                    if (! tips || ! single_chain() || w.apex || ! distinct())
                        return false;
                    auto & c = w.chains[0];
                    auto hits = std::count_if(c.begin(), c.end(), [&] (Vertex v) { return tip_bits.test(v); });
                    return hits >= 3 && is_induced_path(g, c);
                }

                case Pattern::theta: {
                    if (w.chains.size() != 3 || w.apex)
                        return false;
                    Vertex a = w.chains[0].front(), b = w.chains[0].back();
                    if (a == b)
                        return false;
                    std::size_t path_edges = 0;
                    VertexList all { a, b };
                    for (auto & c : w.chains) {
                        if (c.size() < 3 || c.front() != a || c.back() != b || ! is_induced_path(g, c))
                            return false;
                        path_edges += c.size() - 1;
                        all.insert(all.end(), c.begin() + 1, c.end() - 1);
                    }
                    auto sorted = all;
                    std::sort(sorted.begin(), sorted.end());
                    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                        return false;
                    std::size_t induced_edges = 0;
                    for (std::size_t i = 0 ; i < all.size() ; ++i)
                        for (std::size_t j = i + 1 ; j < all.size() ; ++j)
                            if (g.adjacent(all[i], all[j]))
                                ++induced_edges;
                    return induced_edges == path_edges;
                }
            }
        }
        catch (const InvalidArgument &) {
            // repeated vertex inside a chain
            return false;
        }
        return false;
    }
}
