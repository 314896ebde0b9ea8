#include "support.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <set>

using namespace burling;

namespace
{
    auto c4_chord() -> Graph
    {
        std::vector<Edge> e { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 3, 0 }, { 0, 2 } };
        return Graph::from_edges(4, e);
    }

    auto expect_valid(const Graph & g, const std::optional<VertexList> & tips, const std::optional<Witness> & w)
    {
        ASSERT_TRUE(w.has_value());
        EXPECT_TRUE(validate_witness(g, tips, *w)) << to_string(*w);
    }
}

TEST(Triangle, Examples)
{
    auto w = find_triangle(named::complete(3));
    expect_valid(named::complete(3), std::nullopt, w);
    EXPECT_EQ(w->chains[0], (VertexList{ 0, 1, 2 }));
    EXPECT_FALSE(find_triangle(named::cycle(5)));
    EXPECT_FALSE(find_triangle(build_graft(4).first.graph()));
}

TEST(Holes, Examples)
{
    auto c5 = find_holes(named::cycle(5));
    ASSERT_EQ(c5.size(), 1u);
    EXPECT_EQ(c5[0].chains[0], (VertexList{ 0, 1, 2, 3, 4 }));
    EXPECT_TRUE(find_holes(named::complete(4)).empty());
    EXPECT_TRUE(find_holes(c4_chord()).empty());
    EXPECT_THROW(find_holes(named::cycle(5), 3), InvalidArgument);
}

TEST(Holes, MinimumLength)
{
    EXPECT_EQ(find_holes(named::cycle(6), 6).size(), 1u);
    EXPECT_TRUE(find_holes(named::cycle(6), 7).empty());
    // K_{3,3} has nine 4-holes and no longer ones
    EXPECT_EQ(find_holes(named::complete_bipartite(3, 3)).size(), 9u);
}

TEST(Holes, CanonicalFormAndUniqueness)
{
    std::mt19937_64 rng(5);
    for (int trial = 0 ; trial < 60 ; ++trial) {
        auto g = fixtures::random_graph(rng, 9, 0.35);
        auto holes = find_holes(g);
        std::set<VertexList> seen;
        for (auto & h : holes) {
            auto & c = h.chains[0];
            EXPECT_TRUE(is_induced_cycle(g, c));
            EXPECT_EQ(*std::min_element(c.begin(), c.end()), c.front());
            EXPECT_LT(c[1], c.back());
            auto sorted = c;
            std::sort(sorted.begin(), sorted.end());
            EXPECT_TRUE(seen.insert(sorted).second);
        }
        // count against the oracle-style brute force over subsets
        std::size_t expected = 0;
        for (std::uint32_t mask = 1 ; mask < (1u << 9) ; ++mask) {
            if (std::popcount(mask) < 4)
                continue;
            VertexList x;
            for (Vertex v = 0 ; v < 9 ; ++v)
                if (mask >> v & 1u)
                    x.push_back(v);
            auto sub = induced_subgraph(g, x).graph;
            bool cycle = sub.edge_count() == x.size() && oracle_contains(sub, std::nullopt, Pattern::hole, x.size()).has_value();
            expected += cycle ? 1 : 0;
        }
        EXPECT_EQ(holes.size(), expected);
    }
}

TEST(Wheel, Examples)
{
    auto w = fixtures::with_hub(named::cycle(4), { 0, 1, 2, 3 });
    expect_valid(w, std::nullopt, find_wheel(w, 3));
    expect_valid(w, std::nullopt, find_wheel(w, 4));
    EXPECT_FALSE(find_wheel(w, 5));
    auto weak = fixtures::with_hub(named::cycle(5), { 0, 2 });
    EXPECT_FALSE(find_wheel(weak));
    EXPECT_THROW(find_wheel(w, 2), InvalidArgument);
}

TEST(Wheel, BurlingGraphsAreWheelFree)
{
    for (int k = 1 ; k <= 3 ; ++k) {
        EXPECT_FALSE(find_wheel(burling_pair(k).graph())) << k;
        EXPECT_FALSE(find_wheel(build_graft(k).first.graph())) << k;
    }
}

TEST(Wheel, ThreadedSearchAgrees)
{
    std::mt19937_64 rng(17);
    SearchOptions par;
    par.threads = 4;
    for (int trial = 0 ; trial < 100 ; ++trial) {
        auto g = fixtures::random_graph(rng, 10, 0.3);
        auto a = find_wheel(g), b = find_wheel(g, 3, par);
        EXPECT_EQ(a.has_value(), b.has_value());
        if (b)
            EXPECT_TRUE(validate_witness(g, std::nullopt, *b));
    }
    EXPECT_FALSE(find_wheel(build_graft(3).first.graph(), 3, par));
}

TEST(Wheel, SingleThreadedIsDeterministic)
{
    std::mt19937_64 rng(19);
    for (int trial = 0 ; trial < 30 ; ++trial) {
        auto g = fixtures::random_graph(rng, 10, 0.4);
        auto a = find_wheel(g), b = find_wheel(g);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (a)
            EXPECT_EQ(to_string(*a), to_string(*b));
    }
}

TEST(Theta, Examples)
{
    auto k23 = named::complete_bipartite(2, 3);
    expect_valid(k23, std::nullopt, find_theta(k23));
    EXPECT_FALSE(find_theta(named::cycle(6)));
}

TEST(Fan, Examples)
{
    auto g = fixtures::with_hub(named::path(4), { 0, 1, 3 });
    expect_valid(g, std::nullopt, find_fan(g, 3));
    EXPECT_FALSE(find_fan(g, 4));
    EXPECT_FALSE(find_fan(named::cycle(5)));
}

TEST(GuardedFan, Examples)
{
    auto g = fixtures::with_hub(named::path(4), { 0, 1, 3 });
    expect_valid(g, VertexList{ 0, 3 }, find_guarded_fan(Graft(g, { 0, 3 })));
    EXPECT_FALSE(find_guarded_fan(Graft(g, { 0 })));
    for (int k = 1 ; k <= 3 ; ++k)
        EXPECT_FALSE(find_guarded_fan(build_graft(k).first));
}

TEST(MountablePath, Examples)
{
    Graft g(named::path(5), { 0, 2, 4 });
    expect_valid(g.graph(), g.tips(), find_mountable_path(g));
    EXPECT_FALSE(find_mountable_path(Graft(named::path(5), { 0, 4 })));
    for (int k = 1 ; k <= 3 ; ++k)
        EXPECT_FALSE(find_mountable_path(build_graft(k).first));
}

TEST(TipEdge, Examples)
{
    EXPECT_FALSE(find_tip_edge(first_graft()));
    auto w = find_tip_edge(Graft(named::path(3), { 1, 2 }));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->chains[0], (VertexList{ 1, 2 }));
}

TEST(Clean, Examples)
{
    auto k2 = is_clean(first_graft());
    EXPECT_TRUE(k2.clean());

    auto hub4 = is_clean(Graft(fixtures::with_hub(named::cycle(4), { 0, 1, 2, 3 }), {}));
    EXPECT_EQ(hub4[1].status, Status::fails);
    auto w6 = fixtures::with_hub(named::cycle(5), { 0, 1, 2, 3, 4 });
    auto hub5 = is_clean(Graft(w6, {}));
    EXPECT_EQ(hub5[3].status, Status::fails);
    EXPECT_TRUE(validate_witness(w6, std::nullopt, *hub5[3].witness));

    for (int k = 1 ; k <= 3 ; ++k) {
        auto r = is_clean(build_graft(k).first);
        EXPECT_TRUE(r.clean()) << k;
        for (auto & v : r.conditions)
            EXPECT_EQ(v.status, Status::holds) << k << " " << v.name;
    }
}

TEST(Clean, DegenerateGraftsAreClean)
{
    EXPECT_TRUE(is_clean(Graft()).clean());
    EXPECT_TRUE(is_clean(Graft(Graph::from_edges(1, {}), { 0 })).clean());
    EXPECT_EQ(is_clean(Graft(named::path(2), { 0, 1 }))[2].status, Status::fails);
}

TEST(Clean, FailingVerdictsCarryValidWitnesses)
{
    std::mt19937_64 rng(23);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        auto g = fixtures::random_graph(rng, 3 + trial % 9, 0.3);
        auto tips = fixtures::random_subset(rng, g.size(), 4);
        auto r = is_clean(Graft(g, tips));
        for (auto & v : r.conditions) {
            EXPECT_NE(v.status, Status::inconclusive);
            if (v.status == Status::fails)
                EXPECT_TRUE(validate_witness(g, tips, *v.witness)) << to_string(*v.witness);
        }
    }
}

// Plant a hub on a found hole: the certifier must notice.
TEST(Clean, PlantedWheelIsDetected)
{
    std::mt19937_64 rng(29);
    int planted = 0;
    for (int trial = 0 ; trial < 200 && planted < 40 ; ++trial) {
        auto g = fixtures::random_graph(rng, 10, 0.25);
        auto holes = find_holes(g);
        if (holes.empty())
            continue;
        ++planted;
        auto rim = holes[rng() % holes.size()].chains[0];
        // spokes to every other rim vertex keep the hub off triangles when the rim is long enough
        VertexList spokes;
        for (std::size_t i = 0 ; i < rim.size() ; ++i)
            if (rim.size() < 6 || i % 2 == 0)
                spokes.push_back(rim[i]);
        if (spokes.size() < 3)
            spokes = rim;
        auto host = fixtures::with_hub(g, spokes);
        auto r = is_clean(Graft(host, {}));
        EXPECT_FALSE(r.clean());
        EXPECT_EQ(r[3].status, Status::fails);
        EXPECT_TRUE(validate_witness(host, std::nullopt, *r[3].witness));
    }
    EXPECT_GT(planted, 10);
}

TEST(Clean, G4CheapConditions)
{
    auto g4 = build_graft(4).first;
    auto r = is_clean(g4, SearchOptions::with_limit(200000));
    EXPECT_EQ(r[1].status, Status::holds);
    EXPECT_EQ(r[2].status, Status::holds);
    for (int i = 3 ; i <= 5 ; ++i)
        EXPECT_NE(r[i].status, Status::fails);
}

TEST(Budget, LargeGraphsNeedExplicitLimit)
{
    auto g4 = build_graft(4).first;
    EXPECT_THROW(find_wheel(g4.graph()), BudgetRequired);
    EXPECT_THROW(is_clean(g4), BudgetRequired);
}

TEST(Budget, ExhaustedBudgetIsInconclusiveNeverHolds)
{
    auto g3 = build_graft(3).first;
    EXPECT_THROW(find_wheel(g3.graph(), 3, SearchOptions::with_limit(10)), BudgetExceeded);
    auto r = is_clean(g3, SearchOptions::with_limit(10));
    EXPECT_FALSE(r.clean());
    EXPECT_FALSE(r.any_fails());
    EXPECT_EQ(r[3].status, Status::inconclusive);
    EXPECT_EQ(r[3].explored, 10u);
}

TEST(Properties, MonotoneInK)
{
    std::mt19937_64 rng(31);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        auto g = fixtures::random_graph(rng, 10, 0.2 + 0.05 * (trial % 6));
        for (std::size_t k = 3 ; k < 7 ; ++k) {
            if (find_wheel(g, k + 1))
                EXPECT_TRUE(find_wheel(g, k));
            if (find_fan(g, k + 1))
                EXPECT_TRUE(find_fan(g, k));
        }
    }
}

TEST(Properties, NoWheelContainsTheta)
{
    std::mt19937_64 rng(37);
    int wheels = 0;
    for (int trial = 0 ; trial < 400 ; ++trial) {
        auto g = fixtures::random_graph(rng, 10, 0.3);
        auto w = find_wheel(g);
        if (! w)
            continue;
        ++wheels;
        auto sub = induced_subgraph(g, w->vertices()).graph;
        EXPECT_FALSE(find_theta(sub)) << to_string(*w);
    }
    EXPECT_GT(wheels, 50);
}

TEST(Oracle, RefusesLargeGraphs)
{
    EXPECT_THROW(oracle_contains(named::cycle(13), std::nullopt, Pattern::hole), CapExceeded);
}

TEST(Oracle, AgreesWithDetectorsOnSmallSample)
{
    std::mt19937_64 rng(43);
    for (int trial = 0 ; trial < 400 ; ++trial) {
        auto n = 1 + trial % 10;
        auto g = fixtures::random_graph(rng, n, 0.1 + 0.1 * (trial % 5));
        auto tips = fixtures::random_subset(rng, n, 4);
        Graft gf(g, tips);
        EXPECT_EQ(find_triangle(g).has_value(), oracle_contains(g, std::nullopt, Pattern::triangle).has_value());
        EXPECT_EQ(find_wheel(g).has_value(), oracle_contains(g, std::nullopt, Pattern::wheel).has_value());
        EXPECT_EQ(find_theta(g).has_value(), oracle_contains(g, std::nullopt, Pattern::theta).has_value());
        EXPECT_EQ(find_fan(g).has_value(), oracle_contains(g, std::nullopt, Pattern::fan).has_value());
        EXPECT_EQ(find_tip_edge(gf).has_value(), oracle_contains(g, tips, Pattern::tip_edge).has_value());
        EXPECT_EQ(find_guarded_fan(gf).has_value(), oracle_contains(g, tips, Pattern::guarded_fan).has_value());
        EXPECT_EQ(find_mountable_path(gf).has_value(), oracle_contains(g, tips, Pattern::mountable_path).has_value());
    }
}
