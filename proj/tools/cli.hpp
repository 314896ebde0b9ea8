#pragma once

#include <burling/burling.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace burling::cli
{
    enum ExitCode : int
    {
        success = 0,
        property_fails = 1,
        usage_error = 2,
        cap_exceeded = 3
    };

    namespace detail
    {
        inline auto colors_list(const Coloring & c) -> std::string
        {
            std::string s = "[";
            for (std::size_t i = 0 ; i < c.colors.size() ; ++i)
                s += (i ? "," : "") + std::to_string(c.colors[i]);
            return s + "]";
        }

        inline auto options(std::optional<std::uint64_t> budget, bool unlimited, unsigned threads) -> SearchOptions
        {
            SearchOptions o;
            o.node_limit = budget;
            o.unlimited = unlimited;
            o.threads = threads;
            return o;
        }

        inline auto print_report(std::ostream & out, const CleanReport & r) -> void
        {
            for (auto & v : r.conditions) {
                out << "(" << v.index << ") " << v.name << ": " << status_name(v.status);
                if (v.status == Status::fails)
                    out << " witness=" << to_string(*v.witness);
                else if (v.status == Status::inconclusive)
                    out << " (budget exhausted, explored=" << v.explored << ")";
                else
                    out << " (explored=" << v.explored << ")";
                out << "\n";
            }
        }
    }

    /// Runs one command line. argv[0] is the program name.
    inline auto run(const std::vector<std::string> & argv, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app { "Burling graph construction and certification" };
        app.require_subcommand(1);
        app.set_help_all_flag("--help-all");

        // generate
        auto gen = app.add_subcommand("generate", "build the k-th Burling graph or graft and write it to a file");
        std::string gen_mode, gen_out, gen_trace;
        int gen_k = 0, gen_cap = default_level_cap;
        gen->add_option("--mode", gen_mode, "pair: the Burling graph G'_k; graft: (G_k, T_k)")
            ->required()->check(CLI::IsMember({ "pair", "graft" }));
        gen->add_option("--k", gen_k, "level")->required();
        gen->add_option("--out", gen_out, "output graph file")->required();
        gen->add_option("--trace", gen_trace, "write the construction trace (graft mode)");
        gen->add_option("--cap", gen_cap, "largest level allowed")->capture_default_str();

        // verify
        auto ver = app.add_subcommand("verify", "certify the five clean-graft conditions");
        std::string ver_in;
        std::optional<std::uint64_t> ver_budget;
        bool ver_unlimited = false;
        unsigned ver_threads = 1;
        ver->add_option("--in", ver_in, "graph file")->required();
        ver->add_option("--budget", ver_budget, "node limit per detector");
        ver->add_flag("--unlimited", ver_unlimited, "exhaustive search even above 64 vertices");
        ver->add_option("--threads", ver_threads, "threads for the wheel search")->check(CLI::Range(1u, 256u));

        // chroma
        auto chr = app.add_subcommand("chroma", "chromatic number, bounds and rainbow-tip check");
        std::string chr_in;
        bool chr_exact = false, chr_bounds = false;
        std::vector<std::size_t> chr_rainbow;
        std::size_t chr_cap = default_exact_cap;
        chr->add_option("--in", chr_in, "graph file")->required();
        auto exact_flag = chr->add_flag("--exact", chr_exact, "exact chromatic number (default)");
        chr->add_flag("--bounds", chr_bounds, "greedy/odd-cycle bounds only")->excludes(exact_flag);
        chr->add_option("--rainbow", chr_rainbow, "K C: look for a proper C-colouring where every tip sees < K colours")
            ->expected(2);
        chr->add_option("--cap", chr_cap, "exact solver vertex cap")->capture_default_str();

        // equiv
        auto eqv = app.add_subcommand("equiv", "isomorphism between the two constructions at level k");
        int eqv_k = 0;
        bool eqv_large = false;
        eqv->add_option("--k", eqv_k, "level")->required();
        eqv->add_flag("--allow-large", eqv_large, "permit k = 4 (309 vertices)");

        // fuzz
        auto fz = app.add_subcommand("fuzz", "random pendent/clone/join sequences, certified clean after every step");
        std::size_t fz_ops = 8, fz_runs = 1, fz_max_vertices = 40;
        std::uint64_t fz_seed = 0;
        std::string fz_script, fz_failures = "fuzz-failures";
        std::optional<std::uint64_t> fz_budget;
        fz->add_option("--ops", fz_ops, "maximum operations per sequence")->capture_default_str();
        fz->add_option("--seed", fz_seed, "random seed")->capture_default_str();
        fz->add_option("--runs", fz_runs, "number of sequences")->capture_default_str();
        fz->add_option("--max-vertices", fz_max_vertices, "vertex cap for generated grafts")->capture_default_str();
        fz->add_option("--script", fz_script, "replay an operation script instead of generating");
        fz->add_option("--failures", fz_failures, "directory for failing scripts")->capture_default_str();
        fz->add_option("--budget", fz_budget, "node limit per detector");

        // export
        auto exp = app.add_subcommand("export", "export a graph file");
        std::string exp_in, exp_out;
        bool exp_dot = false;
        exp->add_option("--in", exp_in, "graph file")->required();
        exp->add_flag("--dot", exp_dot, "Graphviz DOT")->required();
        exp->add_option("--out", exp_out, "output file (default stdout)");

        std::vector<const char *> cargs;
        for (auto & a : argv)
            cargs.push_back(a.c_str());

        try {
            app.parse(static_cast<int>(cargs.size()), cargs.data());
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return success;
        }
        catch (const CLI::CallForAllHelp &) {
            out << app.help("", CLI::AppFormatMode::All);
            return success;
        }
        catch (const CLI::ParseError & e) {
            err << "error: " << e.what() << "\n" << app.help();
            return usage_error;
        }

        try {
            if (*gen) {
                GraphFile file;
                if (gen_mode == "pair") {
                    if (! gen_trace.empty()) {
                        err << "error: --trace is only available in graft mode\n";
                        return usage_error;
                    }
                    file.graph = burling_pair(gen_k, gen_cap).graph();
                    file.name = "burling-pair-" + std::to_string(gen_k);
                }
                else {
                    auto [g, trace] = build_graft(gen_k, gen_cap);
                    file = GraphFile::of(g, "burling-graft-" + std::to_string(gen_k));
                    if (! gen_trace.empty())
                        write_text_file(gen_trace, to_json(trace).dump(1) + "\n");
                }
                write_text_file(gen_out, serialize(file));
                out << "wrote " << gen_out << ": n=" << file.graph.size() << " edges=" << file.graph.edge_count();
                if (file.tips)
                    out << " tips=" << file.tips->size();
                out << "\n";
                return success;
            }

            if (*ver) {
                auto file = read_graph_file(ver_in);
                auto report = is_clean(file.graft(), detail::options(ver_budget, ver_unlimited, ver_threads));
                detail::print_report(out, report);
                if (report.any_fails())
                    return property_fails;
                if (report.any_inconclusive())
                    return cap_exceeded;
                return success;
            }

            if (*chr) {
                auto file = read_graph_file(chr_in);
                auto & g = file.graph;
                if (chr_bounds) {
                    auto b = bounds_only(g);
                    out << "lower=" << b.lower << " upper=" << b.upper << " exact=" << (b.exact ? "yes" : "no") << "\n";
                }
                else {
                    auto cert = chromatic_number(g, chr_cap);
                    out << "chi=" << cert.chi << " proof=" << proof_name(cert.lower_bound_proof)
                        << " nodes=" << cert.nodes << "\n";
                    out << "coloring=" << detail::colors_list(cert.witness_coloring) << "\n";
                }
                if (! chr_rainbow.empty()) {
                    auto k = chr_rainbow[0], c = chr_rainbow[1];
                    auto found = find_non_rainbow_coloring(file.graft(), k, c, chr_cap);
                    out << "rainbow k=" << k << " c=" << c << ": ";
                    if (found)
                        out << "non-rainbow coloring=" << detail::colors_list(*found) << "\n";
                    else {
                        out << "none (every proper " << c << "-coloring has a tip whose neighbourhood sees >= "
                            << k << " colors)\n";
                        if (c == k)
                            out << "implies chi >= " << k + 1 << " (" << proof_name(LowerBoundProof::rainbow_induction_check) << ")\n";
                    }
                }
                return success;
            }

            if (*eqv) {
                auto map = check_equivalence(eqv_k, eqv_large);
                if (! map) {
                    out << "isomorphic: no\n";
                    return property_fails;
                }
                out << "isomorphic: yes (" << map->size() << " vertices)\n";
                out << "bijection:";
                for (Vertex v = 0 ; v < map->size() ; ++v)
                    out << " " << v << "->" << (*map)[v];
                out << "\n";
                return success;
            }

            if (*fz) {
                SearchOptions opts;
                opts.node_limit = fz_budget;
                if (! fz_script.empty()) {
                    auto script = read_script(fz_script);
                    auto outcome = replay_certified(script, opts);
                    out << "replayed " << outcome.steps_applied << "/" << script.steps.size() << " steps: n="
                        << outcome.final_graft.size() << " tips=" << outcome.final_graft.tips().size() << "\n";
                    if (outcome.failing_step) {
                        out << "NOT CLEAN after step " << *outcome.failing_step << "\n";
                        detail::print_report(out, *outcome.failing_report);
                        return property_fails;
                    }
                    if (outcome.inconclusive) {
                        out << "INCONCLUSIVE (budget exhausted)\n";
                        return cap_exceeded;
                    }
                    out << "CLEAN after every step\n";
                    return success;
                }

                ScriptFuzzer fuzzer(fz_seed, { fz_ops, fz_max_vertices, 3 });
                std::size_t failures = 0, inconclusive = 0;
                for (std::size_t run = 0 ; run < fz_runs ; ++run) {
                    auto tag = "run" + std::to_string(run);
                    auto script = fuzzer.next(tag);
                    auto outcome = replay_certified(script, opts);
                    out << "run " << run << ": start=" << script.start_ref << " ops=" << script.steps.size()
                        << " n=" << outcome.final_graft.size() << " tips=" << outcome.final_graft.tips().size() << " ";
                    if (outcome.failing_step) {
                        ++failures;
                        auto path = write_script(script, fz_failures, tag);
                        out << "NOT CLEAN after step " << *outcome.failing_step << " (script " << path.string() << ")\n";
                        out << format_script(script);
                        detail::print_report(out, *outcome.failing_report);
                    }
                    else if (outcome.inconclusive) {
                        ++inconclusive;
                        out << "INCONCLUSIVE\n";
                    }
                    else
                        out << "CLEAN\n";
                }
                out << "runs=" << fz_runs << " failures=" << failures << " inconclusive=" << inconclusive << "\n";
                if (failures)
                    return property_fails;
                return inconclusive ? cap_exceeded : success;
            }

            if (*exp) {
                auto file = read_graph_file(exp_in);
                auto dot = to_dot(file);
                if (exp_out.empty())
                    out << dot;
                else
                    write_text_file(exp_out, dot);
                return success;
            }
        }
        catch (const CapExceeded & e) {
            err << "error: " << e.what() << "\n";
            return cap_exceeded;
        }
        catch (const BudgetExceeded & e) {
            err << "error: " << e.what() << "\n";
            return cap_exceeded;
        }
        catch (const Error & e) {
            err << "error: " << e.what() << "\n";
            return usage_error;
        }
        return usage_error;
    }
}
