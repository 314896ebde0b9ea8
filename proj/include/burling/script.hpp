#pragma once

#include <burling/builder.hpp>
#include <burling/detectors.hpp>
#include <burling/graft_ops.hpp>
#include <burling/io.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace burling
{
    /// One line of an operation script.
    struct ScriptStep
    {
        OpKind op = OpKind::pendent;
        VertexList targets;
        /// join only: the graft glued on, and the file it is stored in
        std::optional<Graft> joined;
        std::string joined_ref;
    };

    /// A replayable operation sequence:
    ///
    ///     # comment
    ///     start @seed.graph        (optional; default is K2 with one tip)
    ///     pendent 3
    ///     clone 4
    ///     join 4 7 @part.graph
    ///
    /// Graft files are resolved relative to the script's directory.
    struct Script
    {
        Graft start = first_graft();
        std::string start_ref;
        std::vector<ScriptStep> steps;
    };

    inline auto apply(GraftBuilder & b, const ScriptStep & step) -> OpRecord
    {
        switch (step.op) {
            case OpKind::pendent: return b.pendent(step.targets.at(0));
            case OpKind::clone:   return b.clone(step.targets.at(0));
            case OpKind::join:    return b.join(step.targets, step.joined.value());
        }
        throw InvalidArgument("unknown script operation");
    }

    inline auto apply(const Graft & g, const ScriptStep & step) -> Graft
    {
        GraftBuilder b(g);
        apply(b, step);
        return b.build();
    }

    inline auto parse_script(std::string_view text, const std::filesystem::path & base_dir) -> Script
    {
        Script script;
        std::istringstream in { std::string(text) };
        std::string line;
        std::size_t line_no = 0;
        auto fail = [&] (const std::string & why) -> void {
            throw ParseError("script line " + std::to_string(line_no) + ": " + why);
        };
        auto load = [&] (const std::string & ref) -> Graft {
            if (ref.size() < 2 || ref[0] != '@')
                fail("expected @<graft-file>, got '" + ref + "'");
            return read_graph_file((base_dir / ref.substr(1)).string()).graft();
        };

        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            std::istringstream words(line);
            std::vector<std::string> tokens;
            for (std::string w ; words >> w ; )
                tokens.push_back(w);
            if (tokens.empty())
                continue;

            auto vertex = [&] (const std::string & s) -> Vertex {
                try {
                    std::size_t used = 0;
                    auto v = std::stoull(s, &used);
                    if (used != s.size() || v > std::numeric_limits<Vertex>::max())
                        fail("bad vertex '" + s + "'");
                    return static_cast<Vertex>(v);
                }
                catch (const std::logic_error &) {
                    fail("bad vertex '" + s + "'");
                }
                return 0;
            };

            auto & verb = tokens[0];
            if (verb == "start") {
                if (tokens.size() != 2 || ! script.steps.empty())
                    fail("start takes one @<graft-file> and must come first");
                script.start = load(tokens[1]);
                script.start_ref = tokens[1].substr(1);
            }
            else if (verb == "pendent" || verb == "clone") {
                if (tokens.size() != 2)
                    fail(verb + " takes exactly one vertex");
                script.steps.push_back(ScriptStep{ verb == "pendent" ? OpKind::pendent : OpKind::clone,
                        { vertex(tokens[1]) }, std::nullopt, {} });
            }
            else if (verb == "join") {
                if (tokens.size() < 2 || tokens.back().empty() || tokens.back()[0] != '@')
                    fail("join takes vertices followed by @<graft-file>");
                ScriptStep step { OpKind::join, {}, load(tokens.back()), tokens.back().substr(1) };
                for (std::size_t i = 1 ; i + 1 < tokens.size() ; ++i)
                    step.targets.push_back(vertex(tokens[i]));
                script.steps.push_back(std::move(step));
            }
            else
                fail("unknown operation '" + verb + "'");
        }
        return script;
    }

    inline auto read_script(const std::string & path) -> Script
    {
        std::ifstream in(path);
        if (! in)
            throw ParseError("cannot open '" + path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_script(buffer.str(), std::filesystem::path(path).parent_path());
    }

    /// Script text. Steps whose graft has no file reference get `fallback_prefix<i>.graph`.
    inline auto format_script(const Script & s) -> std::string
    {
        std::ostringstream out;
        if (! s.start_ref.empty())
            out << "start @" << s.start_ref << "\n";
        for (auto & step : s.steps) {
            out << op_name(step.op);
            for (auto v : step.targets)
                out << ' ' << v;
            if (step.op == OpKind::join)
                out << " @" << step.joined_ref;
            out << "\n";
        }
        return out.str();
    }

    /// Writes <dir>/<name>.ops plus every graft file it references.
    inline auto write_script(const Script & s, const std::filesystem::path & dir, const std::string & name) -> std::filesystem::path
    {
        std::filesystem::create_directories(dir);
        if (! s.start_ref.empty())
            write_text_file((dir / s.start_ref).string(), serialize(s.start));
        for (auto & step : s.steps)
            if (step.op == OpKind::join)
                write_text_file((dir / step.joined_ref).string(), serialize(*step.joined));
        auto path = dir / (name + ".ops");
        write_text_file(path.string(), format_script(s));
        return path;
    }

    struct ReplayOutcome
    {
        Graft final_graft;
        std::size_t steps_applied = 0;
        /// set when some intermediate graft (0 = the start) is not clean
        std::optional<std::size_t> failing_step;
        std::optional<CleanReport> failing_report;
        bool inconclusive = false;
    };

    /// Applies the script, certifying cleanness of the start and after every step.
    inline auto replay_certified(const Script & s, SearchOptions opts = {}) -> ReplayOutcome
    {
        ReplayOutcome out;
        out.final_graft = s.start;
        auto certify = [&] (std::size_t step) {
            auto report = is_clean(out.final_graft, opts);
            if (report.any_inconclusive())
                out.inconclusive = true;
            if (! report.clean() && ! report.any_inconclusive()) {
                out.failing_step = step;
                out.failing_report = std::move(report);
                return false;
            }
            return true;
        };
        if (! certify(0))
            return out;
        for (auto & step : s.steps) {
            out.final_graft = apply(out.final_graft, step);
            ++out.steps_applied;
            if (! certify(out.steps_applied))
                break;
        }
        return out;
    }

    /// Random legal operation sequences for the closure property.
    class ScriptFuzzer
    {
        public:
            struct Config
            {
                std::size_t max_ops = 8;
                std::size_t max_vertices = 40;
                std::size_t max_joined_ops = 3;
            };

            ScriptFuzzer(std::uint64_t seed, Config config) :
                _rng(seed), _config(config)
            {
                _seeds.emplace_back("k2.graph", first_graft());
                _seeds.emplace_back("g2.graph", build_graft(2).first);
                _seeds.emplace_back("g3.graph", build_graft(3).first);
                _seeds.emplace_back("path-tip.graph", Graft(named::path(3), { 0, 2 }));
            }

            /// A script of 1..max_ops steps. `tag` names the joined graft files.
            auto next(const std::string & tag) -> Script
            {
                Script s;
                auto & [ref, seed] = _seeds[below(_seeds.size())];
                s.start = seed;
                s.start_ref = ref;
                Graft current = s.start;
                auto length = 1 + below(_config.max_ops);

                for (std::size_t i = 0 ; i < length ; ++i) {
                    auto step = random_step(current, tag + "-" + std::to_string(i) + ".graph");
                    if (! step)
                        break;
                    current = apply(current, *step);
                    s.steps.push_back(std::move(*step));
                }
                return s;
            }

        private:
            // rng() % n rather than a distribution, for identical streams across standard libraries
            auto below(std::size_t n) -> std::size_t { return static_cast<std::size_t>(_rng() % n); }

            template <typename T>
            auto pick(const std::vector<T> & xs) -> const T & { return xs[below(xs.size())]; }

            /// A small clean graft with at most max_tips tips, grown from K2 by pendent/clone.
            auto small_graft(std::size_t max_tips) -> Graft
            {
                Graft g = first_graft();
                if (max_tips >= 2 && below(3) == 0)
                    g = build_graft(2).first;
                auto ops = below(_config.max_joined_ops + 1);
                for (std::size_t i = 0 ; i < ops ; ++i) {
                    Vertex t = pick(g.tips());
                    if (g.tips().size() < max_tips && below(2) == 0)
                        g = clone(g, t).first;
                    else
                        g = pendent(g, t).first;
                }
                return g;
            }

            auto random_step(const Graft & g, const std::string & join_ref) -> std::optional<ScriptStep>
            {
                if (g.tips().empty() || g.size() >= _config.max_vertices)
                    return std::nullopt;
                auto room = _config.max_vertices - g.size();

                switch (below(3)) {
                    case 0:
                        return ScriptStep{ OpKind::pendent, { pick(g.tips()) }, std::nullopt, {} };
                    case 1:
                        return ScriptStep{ OpKind::clone, { pick(g.tips()) }, std::nullopt, {} };
                    default: {
                        auto classes = homogeneous_tip_classes(g);
                        auto cls = pick(classes);
                        auto joined = small_graft(cls.size());
                        auto t = joined.tips().size();
                        if (joined.size() - t > room)
                            return ScriptStep{ OpKind::clone, { pick(g.tips()) }, std::nullopt, {} };
                        // random t-subset of the class
                        for (std::size_t i = 0 ; i < t ; ++i)
                            std::swap(cls[i], cls[i + below(cls.size() - i)]);
                        cls.resize(t);
                        std::sort(cls.begin(), cls.end());
                        return ScriptStep{ OpKind::join, cls, std::move(joined), join_ref };
                    }
                }
            }

            std::mt19937_64 _rng;
            Config _config;
            std::vector<std::pair<std::string, Graft>> _seeds;
    };
}
