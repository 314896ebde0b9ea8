#pragma once

#include <burling/graph.hpp>

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace burling
{
    /// Thrown when a search runs out of its node budget. The search is
    /// inconclusive: nothing is known about the pattern.
    class BudgetExceeded : public Error
    {
        public:
            explicit BudgetExceeded(std::uint64_t nodes) :
                Error("search budget exhausted after " + std::to_string(nodes) + " nodes (inconclusive)"),
                _nodes(nodes)
            {
            }

            auto nodes() const -> std::uint64_t { return _nodes; }

        private:
            std::uint64_t _nodes;
    };

    /// Graphs above the unlimited-search size need an explicit node limit or an explicit opt-in.
    class BudgetRequired : public CapExceeded
    {
        public:
            using CapExceeded::CapExceeded;
    };

    struct SearchOptions
    {
        static constexpr std::size_t default_unlimited_size = 64;

        std::optional<std::uint64_t> node_limit;
        bool unlimited = false;
        unsigned threads = 1;

        static auto with_limit(std::uint64_t n) -> SearchOptions
        {
            SearchOptions o;
            o.node_limit = n;
            return o;
        }

        static auto exhaustive() -> SearchOptions
        {
            SearchOptions o;
            o.unlimited = true;
            return o;
        }

        auto resolve(std::size_t graph_size) const -> std::uint64_t
        {
            if (node_limit)
                return *node_limit;
            if (unlimited || graph_size <= default_unlimited_size)
                return std::numeric_limits<std::uint64_t>::max();
            throw BudgetRequired("graph has " + std::to_string(graph_size) + " vertices; searches above "
                    + std::to_string(default_unlimited_size) + " vertices need an explicit node limit or unlimited opt-in");
        }
    };

    /// Shared node counter for one detector run. Safe to tick from several threads.
    class NodeBudget
    {
        public:
            explicit NodeBudget(std::uint64_t limit) : _limit(limit) {}

            auto tick() -> void
            {
                auto used = _used.fetch_add(1, std::memory_order_relaxed) + 1;
                if (used > _limit)
                    throw BudgetExceeded(_limit);
            }

            auto used() const -> std::uint64_t
            {
                auto u = _used.load(std::memory_order_relaxed);
                return u > _limit ? _limit : u;
            }

        private:
            std::uint64_t _limit;
            std::atomic<std::uint64_t> _used { 0 };
    };

    struct SearchStats
    {
        std::uint64_t nodes = 0;
    };
}
