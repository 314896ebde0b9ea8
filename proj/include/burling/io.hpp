#pragma once

#include <burling/graph.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace burling
{
    class ParseError : public Error
    {
        public:
            using Error::Error;
    };

    /// Contents of a graph/graft file.
    ///
    ///     {
    ///       "name": "C5",
    ///       "n": 5,
    ///       "edges": [
    ///         [0, 1],
    ///         ...
    ///       ],
    ///       "tips": [1, 3]
    ///     }
    ///
    /// name and tips are optional. Edges are written with u < v, sorted and
    /// deduplicated, so output is byte-stable.
    struct GraphFile
    {
        Graph graph;
        std::optional<VertexList> tips;
        std::optional<std::string> name;

        auto graft() const -> Graft { return Graft(graph, tips.value_or(VertexList{})); }

        static auto of(const Graft & g, std::optional<std::string> name = std::nullopt) -> GraphFile
        {
            return GraphFile{ g.graph(), g.tips(), std::move(name) };
        }
    };

    inline auto serialize(const GraphFile & f) -> std::string
    {
        std::ostringstream out;
        out << "{\n";
        if (f.name)
            out << "  \"name\": " << nlohmann::json(*f.name).dump() << ",\n";
        out << "  \"n\": " << f.graph.size() << ",\n";
        auto edges = f.graph.edges();
        if (edges.empty())
            out << "  \"edges\": []";
        else {
            out << "  \"edges\": [\n";
            for (std::size_t i = 0 ; i < edges.size() ; ++i)
                out << "    [" << edges[i].first << ", " << edges[i].second << "]" << (i + 1 < edges.size() ? ",\n" : "\n");
            out << "  ]";
        }
        if (f.tips) {
            auto tips = normalize_set(f.graph, *f.tips);
            out << ",\n  \"tips\": [";
            for (std::size_t i = 0 ; i < tips.size() ; ++i)
                out << (i ? ", " : "") << tips[i];
            out << "]";
        }
        out << "\n}\n";
        return out.str();
    }

    inline auto serialize(const Graft & g, std::optional<std::string> name = std::nullopt) -> std::string
    {
        return serialize(GraphFile::of(g, std::move(name)));
    }

    inline auto deserialize(std::string_view text) -> GraphFile
    {
        auto j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || ! j.is_object())
            throw ParseError("graph file is not a JSON object");
        try {
            GraphFile f;
            auto n = j.at("n").get<std::int64_t>();
            if (n < 0)
                throw ParseError("negative vertex count");
            GraphBuilder b(static_cast<std::size_t>(n));
            for (auto & e : j.at("edges")) {
                if (! e.is_array() || e.size() != 2)
                    throw ParseError("edge must be a [u, v] pair");
                auto u = e[0].get<std::int64_t>(), v = e[1].get<std::int64_t>();
                if (u < 0 || v < 0 || u >= n || v >= n)
                    throw ParseError("edge [" + std::to_string(u) + ", " + std::to_string(v) + "] is out of range");
                b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
            }
            f.graph = std::move(b).build();
            if (j.contains("tips")) {
                VertexList tips;
                for (auto & t : j.at("tips")) {
                    auto v = t.get<std::int64_t>();
                    if (v < 0 || v >= n)
                        throw ParseError("tip " + std::to_string(v) + " is out of range");
                    tips.push_back(static_cast<Vertex>(v));
                }
                f.tips = normalize_set(f.graph, std::move(tips));
            }
            if (j.contains("name"))
                f.name = j.at("name").get<std::string>();
            return f;
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(std::string("malformed graph file: ") + e.what());
        }
        catch (const InvalidArgument & e) {
            throw ParseError(std::string("malformed graph file: ") + e.what());
        }
    }

    inline auto read_graph_file(const std::string & path) -> GraphFile
    {
        std::ifstream in(path);
        if (! in)
            throw ParseError("cannot open '" + path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return deserialize(buffer.str());
    }

    inline auto write_text_file(const std::string & path, std::string_view text) -> void
    {
        std::ofstream out(path, std::ios::binary);
        if (! out)
            throw Error("cannot write '" + path + "'");
        out << text;
    }

    /// Graphviz export. Tips are drawn as boxes, other vertices as circles.
    inline auto to_dot(const GraphFile & f) -> std::string
    {
        std::ostringstream out;
        out << "graph " << nlohmann::json(f.name.value_or("G")).dump() << " {\n";
        out << "  node [shape=circle];\n";
        auto tips = f.tips ? normalize_set(f.graph, *f.tips) : VertexList{};
        auto t = tips.begin();
        for (Vertex v = 0 ; v < f.graph.size() ; ++v) {
            out << "  " << v;
            if (t != tips.end() && *t == v) {
                out << " [shape=box]";
                ++t;
            }
            out << ";\n";
        }
        for (auto [u, v] : f.graph.edges())
            out << "  " << u << " -- " << v << ";\n";
        out << "}\n";
        return out.str();
    }
}
