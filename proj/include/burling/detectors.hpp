#pragma once

#include <burling/graph.hpp>
#include <burling/search.hpp>
#include <burling/witness.hpp>

#include <array>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace burling
{
    namespace detail
    {
        enum class Step
        {
            extend,
            prune,
            stop
        };

        /// Depth-first enumeration of induced paths starting at a fixed vertex.
        ///
        /// enter(path) is called after each vertex is appended (the start
        /// included) and decides whether to extend, prune or stop. leave(v) is
        /// called when v is popped. Returns true iff some enter() said stop.
        class InducedPathWalker
        {
            public:
                InducedPathWalker(const Graph & g, NodeBudget & budget) :
                    _g(g),
                    _budget(budget),
                    _blocked(g.size() + 1, Bitset(g.size()))
                {
                    g.require_rows("induced path search");
                }

                template <typename Enter, typename Leave>
                auto walk(Vertex start, const Bitset & allowed, Enter && enter, Leave && leave) -> bool
                {
                    _path.clear();
                    _path.push_back(start);
                    _budget.tick();
                    auto step = enter(static_cast<const VertexList &>(_path));
                    bool stopped = false;
                    if (step == Step::stop)
                        stopped = true;
                    else if (step == Step::extend) {
                        _blocked[0].clear();
                        stopped = recurse(allowed, enter, leave);
                    }
                    if (! stopped)
                        leave(start);
                    return stopped;
                }

                auto path() const -> const VertexList & { return _path; }

            private:
                // _blocked[m] = N[p_0] ∪ ... ∪ N[p_{m-1}] when the path is p_0..p_m.
                template <typename Enter, typename Leave>
                auto recurse(const Bitset & allowed, Enter & enter, Leave & leave) -> bool
                {
                    auto m = _path.size() - 1;
                    Vertex end = _path.back();
                    Bitset candidates = _g.row(end) & allowed;
                    candidates.subtract(_blocked[m]);

                    auto & next_blocked = _blocked[m + 1];
                    next_blocked = _blocked[m];
                    next_blocked |= _g.row(end);
                    next_blocked.set(end);

                    for (auto w = candidates.find_first() ; w < candidates.size() ; w = candidates.find_next(w + 1)) {
                        _budget.tick();
                        _path.push_back(static_cast<Vertex>(w));
                        auto step = enter(static_cast<const VertexList &>(_path));
                        if (step == Step::stop)
                            return true;
                        if (step == Step::extend && recurse(allowed, enter, leave))
                            return true;
                        _path.pop_back();
                        leave(static_cast<Vertex>(w));
                    }
                    return false;
                }

                const Graph & _g;
                NodeBudget & _budget;
                std::vector<Bitset> _blocked;
                VertexList _path;
        };

        /// Depth-first enumeration of holes through a fixed anchor vertex.
        ///
        /// Every hole C through the anchor with C \ {anchor} inside `allowed` is
        /// reported exactly once, as [anchor, p1, ..., pm, w] with p1 < w.
        class HoleWalker
        {
            public:
                HoleWalker(const Graph & g, NodeBudget & budget, const std::atomic<bool> * cancel = nullptr) :
                    _g(g),
                    _budget(budget),
                    _cancel(cancel),
                    _blocked(g.size() + 1, Bitset(g.size())),
                    _on_path(g.size())
                {
                    g.require_rows("hole search");
                }

                /// on_close(cycle, on_path_bits) -> true to stop. Returns true iff stopped or cancelled.
                template <typename OnClose>
                auto walk(Vertex anchor, const Bitset & allowed, std::size_t min_len, OnClose && on_close) -> bool
                {
                    _anchor = anchor;
                    _min_len = std::max<std::size_t>(min_len, 4);
                    _closers = _g.row(anchor) & allowed;
                    _path.assign(1, anchor);
                    _on_path.clear();
                    _on_path.set(anchor);

                    for (auto b = _closers.find_first() ; b < _closers.size() ; b = _closers.find_next(b + 1)) {
                        _budget.tick();
                        _path.push_back(static_cast<Vertex>(b));
                        _on_path.set(b);
                        _blocked[1].clear();
                        if (recurse(allowed, on_close))
                            return true;
                        _on_path.reset(b);
                        _path.pop_back();
                    }
                    return false;
                }

            private:
                // With path p_0..p_m, _blocked[m] = N[p_1] ∪ ... ∪ N[p_{m-1}].
                template <typename OnClose>
                auto recurse(const Bitset & allowed, OnClose & on_close) -> bool
                {
                    if (_cancel && _cancel->load(std::memory_order_relaxed))
                        return true;

                    auto m = _path.size() - 1;
                    Vertex end = _path.back();
                    Vertex second = _path[1];
                    Bitset candidates = _g.row(end) & allowed;
                    candidates.subtract(_blocked[m]);
                    candidates.reset(_anchor);

                    auto & next_blocked = _blocked[m + 1];
                    next_blocked = _blocked[m];
                    next_blocked |= _g.row(end);
                    next_blocked.set(end);

                    // closing vertices must exceed p1 and stay unblocked
                    Bitset open_closers = _closers;
                    open_closers.subtract(next_blocked);
                    bool can_close_later = open_closers.find_next(second + 1) < open_closers.size();

                    for (auto w = candidates.find_first() ; w < candidates.size() ; w = candidates.find_next(w + 1)) {
                        _budget.tick();
                        if (_g.row(_anchor).test(w)) {
                            if (m >= 2 && w > second && m + 2 >= _min_len) {
                                _path.push_back(static_cast<Vertex>(w));
                                _on_path.set(w);
                                bool stop = on_close(static_cast<const VertexList &>(_path), static_cast<const Bitset &>(_on_path));
                                _on_path.reset(w);
                                _path.pop_back();
                                if (stop)
                                    return true;
                            }
                            continue;
                        }
                        if (! can_close_later)
                            continue;
                        _path.push_back(static_cast<Vertex>(w));
                        _on_path.set(w);
                        if (recurse(allowed, on_close))
                            return true;
                        _on_path.reset(w);
                        _path.pop_back();
                    }
                    return false;
                }

                const Graph & _g;
                NodeBudget & _budget;
                const std::atomic<bool> * _cancel;
                std::vector<Bitset> _blocked;
                Bitset _on_path;
                Bitset _closers;
                VertexList _path;
                Vertex _anchor = 0;
                std::size_t _min_len = 4;
        };

        inline auto record(SearchStats * stats, const NodeBudget & budget) -> void
        {
            if (stats)
                stats->nodes = budget.used();
        }
    }

    inline auto find_triangle(const Graph & g, SearchStats * stats = nullptr) -> std::optional<Witness>
    {
        std::uint64_t checked = 0;
        std::optional<Witness> result;
        for (Vertex u = 0 ; u < g.size() && ! result ; ++u)
            for (auto v : g.neighbors(u)) {
                if (v <= u)
                    continue;
                ++checked;
                auto nu = g.neighbors(u), nv = g.neighbors(v);
                // sorted lists: first common neighbour above v
                auto i = std::upper_bound(nu.begin(), nu.end(), v);
                auto j = std::upper_bound(nv.begin(), nv.end(), v);
                while (i != nu.end() && j != nv.end()) {
                    if (*i < *j)
                        ++i;
                    else if (*j < *i)
                        ++j;
                    else
                        break;
                }
                if (i != nu.end() && j != nv.end()) {
                    result = Witness{ Pattern::triangle, 0, std::nullopt, { { u, v, *i } } };
                    break;
                }
            }
        if (stats)
            stats->nodes = checked;
        return result;
    }

    /// Calls visit(cycle) for every hole of length >= min_len, each exactly once,
    /// in canonical form: lowest vertex first, its lower cycle-neighbour second.
    /// visit returns true to stop early.
    template <typename Visit>
    auto for_each_hole(const Graph & g, std::size_t min_len, Visit && visit, SearchOptions opts = {},
            SearchStats * stats = nullptr) -> void
    {
        if (min_len < 4)
            throw InvalidArgument("hole length must be at least 4");
        if (g.empty())
            return;
        NodeBudget budget(opts.resolve(g.size()));
        detail::HoleWalker walker(g, budget);
        Bitset allowed(g.size());
        for (Vertex v = 0 ; v < g.size() ; ++v)
            allowed.set(v);
        try {
            for (Vertex a = 0 ; a < g.size() ; ++a) {
                allowed.reset(a);
                if (walker.walk(a, allowed, min_len, [&] (const VertexList & cycle, const Bitset &) { return visit(cycle); }))
                    break;
            }
        }
        catch (...) {
            detail::record(stats, budget);
            throw;
        }
        detail::record(stats, budget);
    }

    inline auto find_holes(const Graph & g, std::size_t min_len = 4, SearchOptions opts = {}) -> std::vector<Witness>
    {
        std::vector<Witness> result;
        for_each_hole(g, min_len, [&] (const VertexList & cycle) {
                result.push_back(Witness{ Pattern::hole, 0, std::nullopt, { cycle } });
                return false;
                }, opts);
        return result;
    }

    namespace detail
    {
        /// Searches for a hole with >= k neighbours of hub.
        inline auto wheel_at_hub(const Graph & g, Vertex hub, std::size_t k, HoleWalker & walker) -> std::optional<Witness>
        {
            const Bitset & spokes = g.row(hub);
            std::optional<Witness> found;
            Bitset allowed(g.size());
            for (Vertex v = 0 ; v < g.size() ; ++v)
                allowed.set(v);
            allowed.reset(hub);

            // anchor = lowest hub-neighbour on the rim
            for (auto a = spokes.find_first() ; a < spokes.size() ; a = spokes.find_next(a + 1)) {
                allowed.reset(a);
                bool stop = walker.walk(static_cast<Vertex>(a), allowed, 4, [&] (const VertexList & cycle, const Bitset & on_cycle) {
                        if (on_cycle.intersection_count(spokes) < k)
                            return false;
                        found = Witness{ Pattern::wheel, k, hub, { cycle } };
                        return true;
                        });
                if (stop)
                    break;
            }
            return found;
        }
    }

    /// Finds an induced k-wheel: a hole plus a hub outside it with at least k
    /// neighbours on it. Hubs are tried in increasing order; with threads > 1
    /// independent hubs are searched concurrently and any witness may win.
    inline auto find_wheel(const Graph & g, std::size_t k = 3, SearchOptions opts = {}, SearchStats * stats = nullptr)
        -> std::optional<Witness>
    {
        if (k < 3)
            throw InvalidArgument("wheel threshold must be at least 3");
        if (g.size() < 5)
            return std::nullopt;

        NodeBudget budget(opts.resolve(g.size()));
        VertexList hubs;
        for (Vertex h = 0 ; h < g.size() ; ++h)
            if (g.degree(h) >= k)
                hubs.push_back(h);

        std::optional<Witness> result;
        unsigned threads = std::max(1u, opts.threads);

        if (threads == 1) {
            detail::HoleWalker walker(g, budget);
            try {
                for (auto h : hubs)
                    if ((result = detail::wheel_at_hub(g, h, k, walker)))
                        break;
            }
            catch (...) {
                detail::record(stats, budget);
                throw;
            }
            detail::record(stats, budget);
            return result;
        }

        std::atomic<bool> cancel { false };
        std::atomic<std::size_t> next_hub { 0 };
        std::mutex lock;
        std::exception_ptr failure;
        std::optional<std::pair<Vertex, Witness>> best;

        auto worker = [&] () {
            detail::HoleWalker walker(g, budget, &cancel);
            try {
                while (! cancel.load()) {
                    auto i = next_hub.fetch_add(1);
                    if (i >= hubs.size())
                        break;
                    if (auto w = detail::wheel_at_hub(g, hubs[i], k, walker)) {
                        std::lock_guard guard(lock);
                        if (! best || hubs[i] < best->first)
                            best = std::pair{ hubs[i], *w };
                        cancel = true;
                    }
                }
            }
            catch (...) {
                std::lock_guard guard(lock);
                if (! failure)
                    failure = std::current_exception();
                cancel = true;
            }
        };

        std::vector<std::thread> pool;
        for (unsigned t = 0 ; t < threads ; ++t)
            pool.emplace_back(worker);
        for (auto & t : pool)
            t.join();

        detail::record(stats, budget);
        if (best)
            return best->second;
        if (failure)
            std::rethrow_exception(failure);
        return std::nullopt;
    }

    /// Finds an induced theta: two non-adjacent branch vertices joined by three
    /// induced paths of length >= 2 with no edges between their interiors.
    inline auto find_theta(const Graph & g, SearchOptions opts = {}, SearchStats * stats = nullptr) -> std::optional<Witness>
    {
        if (g.size() < 5)
            return std::nullopt;
        NodeBudget budget(opts.resolve(g.size()));
        detail::InducedPathWalker walker(g, budget);

        struct Branch
        {
            VertexList path;
            Bitset interior;
            Bitset closed;
        };

        std::optional<Witness> result;
        try {
            for (Vertex a = 0 ; a < g.size() && ! result ; ++a) {
                if (g.degree(a) < 3)
                    continue;
                for (Vertex b = a + 1 ; b < g.size() && ! result ; ++b) {
                    if (g.degree(b) < 3 || g.adjacent(a, b))
                        continue;
                    // all induced a-b paths with a non-empty interior
                    Bitset allowed(g.size());
                    for (Vertex v = 0 ; v < g.size() ; ++v)
                        allowed.set(v);
                    allowed.reset(a);
                    allowed.reset(b);
                    std::vector<Branch> branches;
                    walker.walk(a, allowed, [&] (const VertexList & path) {
                            if (path.size() >= 2 && g.adjacent(path.back(), b)) {
                                Branch br { path, Bitset(g.size()), Bitset(g.size()) };
                                br.path.push_back(b);
                                for (std::size_t i = 1 ; i < path.size() ; ++i) {
                                    br.interior.set(path[i]);
                                    br.closed.set(path[i]);
                                    br.closed |= g.row(path[i]);
                                }
                                branches.push_back(std::move(br));
                                return detail::Step::prune;
                            }
                            return detail::Step::extend;
                            }, [] (Vertex) { });

                    auto compatible = [&] (const Branch & x, const Branch & y) { return ! x.closed.intersects(y.interior); };
                    for (std::size_t i = 0 ; i < branches.size() && ! result ; ++i)
                        for (std::size_t j = i + 1 ; j < branches.size() && ! result ; ++j) {
                            if (! compatible(branches[i], branches[j]))
                                continue;
                            for (std::size_t l = j + 1 ; l < branches.size() ; ++l) {
                                budget.tick();
                                if (compatible(branches[i], branches[l]) && compatible(branches[j], branches[l])) {
                                    result = Witness{ Pattern::theta, 0, std::nullopt,
                                        { branches[i].path, branches[j].path, branches[l].path } };
                                    break;
                                }
                            }
                        }
                }
            }
        }
        catch (...) {
            detail::record(stats, budget);
            throw;
        }
        detail::record(stats, budget);
        return result;
    }

    namespace detail
    {
        /// Per-vertex count of path neighbours, maintained as the path grows and shrinks.
        class HitCounter
        {
            public:
                HitCounter(const Graph & g, std::size_t threshold) :
                    _g(g), _threshold(threshold), _hits(g.size(), 0)
                {
                }

                /// Returns a vertex whose count just reached the threshold, if any.
                auto add(Vertex v) -> std::optional<Vertex>
                {
                    std::optional<Vertex> reached;
                    for (auto f : _g.neighbors(v))
                        if (++_hits[f] == _threshold) {
                            ++_heavy;
                            if (! reached)
                                reached = f;
                        }
                    return reached;
                }

                auto remove(Vertex v) -> void
                {
                    for (auto f : _g.neighbors(v))
                        if (_hits[f]-- == _threshold)
                            --_heavy;
                }

                auto any_heavy() const -> bool { return _heavy > 0; }

                auto first_heavy() const -> std::optional<Vertex>
                {
                    for (Vertex v = 0 ; v < _hits.size() ; ++v)
                        if (_hits[v] >= _threshold)
                            return v;
                    return std::nullopt;
                }

            private:
                const Graph & _g;
                std::size_t _threshold;
                std::vector<std::size_t> _hits;
                std::size_t _heavy = 0;
        };

        inline auto everything(const Graph & g) -> Bitset
        {
            Bitset all(g.size());
            for (Vertex v = 0 ; v < g.size() ; ++v)
                all.set(v);
            return all;
        }
    }

    /// Finds an induced k-fan: an induced path plus a pivot off the path with at
    /// least k neighbours on it. The returned path starts at a pivot neighbour.
    inline auto find_fan(const Graph & g, std::size_t k = 3, SearchOptions opts = {}, SearchStats * stats = nullptr)
        -> std::optional<Witness>
    {
        if (k < 3)
            throw InvalidArgument("fan threshold must be at least 3");
        if (g.size() < k + 1)
            return std::nullopt;
        NodeBudget budget(opts.resolve(g.size()));
        detail::InducedPathWalker walker(g, budget);
        detail::HitCounter hits(g, k);
        auto allowed = detail::everything(g);

        std::optional<Witness> result;
        try {
            for (Vertex a = 0 ; a < g.size() && ! result ; ++a) {
                auto ns = g.neighbors(a);
                if (std::none_of(ns.begin(), ns.end(), [&] (Vertex f) { return g.degree(f) >= k; }))
                    continue;
                walker.walk(a, allowed, [&] (const VertexList & path) {
                        if (auto pivot = hits.add(path.back())) {
                            result = Witness{ Pattern::fan, k, *pivot, { path } };
                            return detail::Step::stop;
                        }
                        return detail::Step::extend;
                        }, [&] (Vertex v) { hits.remove(v); });
            }
        }
        catch (...) {
            detail::record(stats, budget);
            throw;
        }
        detail::record(stats, budget);

        if (result) {
            // trim leading vertices that miss the pivot
            auto & path = result->chains[0];
            auto first = std::find_if(path.begin(), path.end(), [&] (Vertex v) { return g.adjacent(*result->apex, v); });
            path.erase(path.begin(), first);
        }
        return result;
    }

    /// Finds an induced guarded fan: a fan (threshold 3) whose path has both endpoints in the tips.
    inline auto find_guarded_fan(const Graft & gf, SearchOptions opts = {}, SearchStats * stats = nullptr)
        -> std::optional<Witness>
    {
        auto & g = gf.graph();
        if (gf.tips().size() < 2 || g.size() < 4) {
            if (stats)
                stats->nodes = 0;
            return std::nullopt;
        }
        NodeBudget budget(opts.resolve(g.size()));
        detail::InducedPathWalker walker(g, budget);
        detail::HitCounter hits(g, 3);
        auto allowed = detail::everything(g);

        std::optional<Witness> result;
        try {
            for (auto s : gf.tips()) {
                bool stopped = walker.walk(s, allowed, [&] (const VertexList & path) {
                        Vertex end = path.back();
                        hits.add(end);
                        if (path.size() >= 3 && end > s && gf.is_tip(end) && hits.any_heavy()) {
                            result = Witness{ Pattern::guarded_fan, 3, *hits.first_heavy(), { path } };
                            return detail::Step::stop;
                        }
                        return detail::Step::extend;
                        }, [&] (Vertex v) { hits.remove(v); });
                if (stopped)
                    break;
            }
        }
        catch (...) {
            detail::record(stats, budget);
            throw;
        }
        detail::record(stats, budget);
        return result;
    }

    /// Finds an induced path containing at least three tips. By minimality the
    /// search only follows paths from a tip until the third tip is reached.
    inline auto find_mountable_path(const Graft & gf, SearchOptions opts = {}, SearchStats * stats = nullptr)
        -> std::optional<Witness>
    {
        auto & g = gf.graph();
        if (gf.tips().size() < 3) {
            if (stats)
                stats->nodes = 0;
            return std::nullopt;
        }
        NodeBudget budget(opts.resolve(g.size()));
        detail::InducedPathWalker walker(g, budget);
        auto allowed = detail::everything(g);
        std::size_t tip_count = 0;

        std::optional<Witness> result;
        try {
            for (auto s : gf.tips()) {
                tip_count = 0;
                bool stopped = walker.walk(s, allowed, [&] (const VertexList & path) {
                        if (gf.is_tip(path.back()) && ++tip_count == 3) {
                            result = Witness{ Pattern::mountable_path, 0, std::nullopt, { path } };
                            return detail::Step::stop;
                        }
                        return detail::Step::extend;
                        }, [&] (Vertex v) { if (gf.is_tip(v)) --tip_count; });
                if (stopped)
                    break;
            }
        }
        catch (...) {
            detail::record(stats, budget);
            throw;
        }
        detail::record(stats, budget);
        return result;
    }

    /// An edge between two tips, if the tips are not a stable set.
    inline auto find_tip_edge(const Graft & gf, SearchStats * stats = nullptr) -> std::optional<Witness>
    {
        std::uint64_t checked = 0;
        std::optional<Witness> result;
        for (auto t : gf.tips()) {
            for (auto w : gf.graph().neighbors(t)) {
                ++checked;
                if (w > t && gf.is_tip(w)) {
                    result = Witness{ Pattern::tip_edge, 0, std::nullopt, { { t, w } } };
                    break;
                }
            }
            if (result)
                break;
        }
        if (stats)
            stats->nodes = checked;
        return result;
    }

    enum class Status
    {
        holds,
        fails,
        inconclusive
    };

    inline auto status_name(Status s) -> std::string_view
    {
        switch (s) {
            case Status::holds:        return "HOLDS";
            case Status::fails:        return "FAILS";
            case Status::inconclusive: return "INCONCLUSIVE";
        }
        return "?";
    }

    struct Verdict
    {
        int index = 0;
        std::string name;
        Status status = Status::inconclusive;
        std::optional<Witness> witness;
        std::uint64_t explored = 0;
    };

    /// Verdicts for the five clean-graft conditions, in order:
    /// (1) triangle-free, (2) tips-stable, (3) wheel-free, (4) no-guarded-fan, (5) no-mountable-path.
    struct CleanReport
    {
        std::array<Verdict, 5> conditions;

        auto clean() const -> bool
        {
            return std::all_of(conditions.begin(), conditions.end(), [] (const Verdict & v) { return v.status == Status::holds; });
        }

        auto any_fails() const -> bool
        {
            return std::any_of(conditions.begin(), conditions.end(), [] (const Verdict & v) { return v.status == Status::fails; });
        }

        auto any_inconclusive() const -> bool
        {
            return std::any_of(conditions.begin(), conditions.end(), [] (const Verdict & v) { return v.status == Status::inconclusive; });
        }

        auto operator[](int index) const -> const Verdict & { return conditions.at(index - 1); }
    };

    /// Runs all five detectors. A condition only HOLDS after its search was
    /// exhausted; a detector that runs out of budget is reported INCONCLUSIVE.
    inline auto is_clean(const Graft & gf, SearchOptions opts = {}) -> CleanReport
    {
        CleanReport report;
        auto run = [&] (int index, const char * name, auto && detect) {
            auto & v = report.conditions[index - 1];
            v.index = index;
            v.name = name;
            SearchStats stats;
            try {
                v.witness = detect(&stats);
                v.status = v.witness ? Status::fails : Status::holds;
            }
            catch (const BudgetExceeded &) {
                v.status = Status::inconclusive;
            }
            v.explored = stats.nodes;
        };

        auto & g = gf.graph();
        run(1, "triangle-free", [&] (SearchStats * s) { return find_triangle(g, s); });
        run(2, "tips-stable", [&] (SearchStats * s) { return find_tip_edge(gf, s); });
        run(3, "wheel-free", [&] (SearchStats * s) { return find_wheel(g, 3, opts, s); });
        run(4, "no-guarded-fan", [&] (SearchStats * s) { return find_guarded_fan(gf, opts, s); });
        run(5, "no-mountable-path", [&] (SearchStats * s) { return find_mountable_path(gf, opts, s); });
        return report;
    }
}
