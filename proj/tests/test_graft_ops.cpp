#include "support.hpp"

#include <gtest/gtest.h>

using namespace burling;

namespace
{
    auto k2() -> Graft { return first_graft(); }
}

TEST(Pendent, AttachesLeafAndMovesTip)
{
    auto [g, rec] = pendent(k2(), 1);
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(g.graph(), named::path(3));
    EXPECT_EQ(g.tips(), (VertexList{ 2 }));
    EXPECT_EQ(rec.op, OpKind::pendent);
    EXPECT_EQ(rec.targets, (VertexList{ 1 }));
    EXPECT_EQ(rec.created, (VertexList{ 2 }));
}

TEST(Pendent, TwiceGivesPathOfLengthThree)
{
    auto g = pendent(pendent(k2(), 1).first, 2).first;
    EXPECT_EQ(g.graph(), named::path(4));
    EXPECT_EQ(g.tips(), (VertexList{ 3 }));
}

TEST(Pendent, RejectsNonTips)
{
    EXPECT_THROW(pendent(k2(), 0), TipViolation);
    EXPECT_THROW(pendent(k2(), 5), InvalidVertex);
}

TEST(Clone, CopiesNeighbourhood)
{
    auto [g, rec] = clone(k2(), 1);
    EXPECT_EQ(g.graph(), named::complete_bipartite(1, 2));
    EXPECT_EQ(g.tips(), (VertexList{ 1, 2 }));
    EXPECT_FALSE(g.graph().adjacent(1, 2));
    EXPECT_EQ(rec.created, (VertexList{ 2 }));
}

TEST(Clone, IsolatedTipGivesTwoIsolatedTips)
{
    Graft single(Graph::from_edges(1, {}), { 0 });
    auto g = clone(single, 0).first;
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(g.graph().edge_count(), 0u);
    EXPECT_EQ(g.tips(), (VertexList{ 0, 1 }));
}

TEST(Clone, RejectsNonTips)
{
    EXPECT_THROW(clone(k2(), 0), TipViolation);
}

TEST(Join, SingleIdentificationGivesPath)
{
    auto [g, rec] = join(k2(), { 1 }, k2());
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(g.graph().edge_count(), 2u);
    EXPECT_EQ(g.tips(), (VertexList{ 1 }));
    EXPECT_EQ(g.graph().degree(1), 2u);
    EXPECT_EQ(rec.created, (VertexList{ 2 }));
    EXPECT_EQ(rec.identified, (std::vector<std::pair<Vertex, Vertex>>{ { 1, 1 } }));
}

TEST(Join, PairsSortedTipsOntoSortedTargets)
{
    auto host = clone(clone(k2(), 1).first, 1).first;   // star 0 - {1,2,3}
    Graft guest(named::path(3), { 2, 0 });
    auto [g, rec] = join(host, { 3, 1 }, guest);
    EXPECT_EQ(rec.targets, (VertexList{ 1, 3 }));
    EXPECT_EQ(rec.identified, (std::vector<std::pair<Vertex, Vertex>>{ { 0, 1 }, { 2, 3 } }));
    EXPECT_EQ(rec.created, (VertexList{ 4 }));
    EXPECT_TRUE(g.graph().adjacent(1, 4));
    EXPECT_TRUE(g.graph().adjacent(3, 4));
    EXPECT_EQ(g.tips(), host.tips());
}

TEST(Join, PreconditionErrors)
{
    auto host = clone(k2(), 1).first;
    auto two_tips = clone(k2(), 1).first;
    EXPECT_THROW(join(host, { 0 }, k2()), TipViolation);
    EXPECT_THROW(join(host, { 1 }, two_tips), ArityError);
    EXPECT_THROW(join(host, { 1, 1 }, two_tips), InvalidArgument);
    EXPECT_THROW(join(host, { 1, 9 }, two_tips), InvalidVertex);

    // tips 2 and 3 have neighbourhoods {1} and {0}
    Graft uneven(named::path(4), { 0, 3 });
    EXPECT_THROW(join(uneven, { 0, 3 }, two_tips), HomogeneityError);
}

TEST(Join, HomogeneousClasses)
{
    auto g = clone(clone(pendent(clone(k2(), 1).first, 2).first, 1).first, 3).first;
    for (auto & cls : homogeneous_tip_classes(g)) {
        auto ref = neighborhood(g.graph(), cls.front());
        for (auto t : cls)
            EXPECT_EQ(neighborhood(g.graph(), t), ref);
    }
}

TEST(Accounting, VertexEdgeAndTipLaws)
{
    std::mt19937_64 rng(3);
    Graft g = k2();
    for (int step = 0 ; step < 60 && g.size() < 60 ; ++step) {
        auto t = g.tips()[rng() % g.tips().size()];
        auto n = g.size(), m = g.graph().edge_count(), tips = g.tips().size();
        switch (rng() % 3) {
            case 0: {
                g = pendent(g, t).first;
                EXPECT_EQ(g.size(), n + 1);
                EXPECT_EQ(g.graph().edge_count(), m + 1);
                EXPECT_EQ(g.tips().size(), tips);
                break;
            }
            case 1: {
                auto d = g.graph().degree(t);
                g = clone(g, t).first;
                EXPECT_EQ(g.size(), n + 1);
                EXPECT_EQ(g.graph().edge_count(), m + d);
                EXPECT_EQ(g.tips().size(), tips + 1);
                break;
            }
            default: {
                auto classes = homogeneous_tip_classes(g);
                auto & cls = classes[rng() % classes.size()];
                auto guest = cls.size() >= 2 ? build_graft(2).first : k2();
                VertexList x(cls.begin(), cls.begin() + guest.tips().size());
                auto before = g.tips();
                g = join(g, x, guest).first;
                EXPECT_EQ(g.size(), n + guest.size() - x.size());
                EXPECT_EQ(g.graph().edge_count(), m + guest.graph().edge_count());
                EXPECT_EQ(g.tips(), before);
            }
        }
    }
}

TEST(Accounting, CreatedIdsAreFresh)
{
    auto host = clone(k2(), 1).first;
    auto [g, rec] = join(host, { 1, 2 }, build_graft(2).first);
    for (auto v : rec.created)
        EXPECT_GE(v, host.size());
    EXPECT_EQ(rec.created.size(), 3u);
    EXPECT_EQ(rec.identified.size(), 2u);
}

// The identification rule is fixed to sorted order; any other pairing must give an isomorphic graft.
TEST(Join, PairingChoiceIsIrrelevantUpToIsomorphism)
{
    std::mt19937_64 rng(41);
    for (int k : { 2, 3 }) {
        auto guest = build_graft(k).first;
        auto t = guest.tips().size();
        Graft host = k2();
        for (std::size_t i = 1 ; i < t ; ++i)
            host = clone(host, 1).first;
        auto x = host.tips();
        auto sorted = join(host, x, guest).first;

        for (int trial = 0 ; trial < 2 ; ++trial) {
            // relabel the guest's tips with a random permutation so the sorted rule pairs them differently
            VertexList perm(guest.size());
            std::iota(perm.begin(), perm.end(), 0);
            auto tips = guest.tips();
            auto shuffled = tips;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            for (std::size_t i = 0 ; i < tips.size() ; ++i)
                perm[tips[i]] = shuffled[i];
            auto other = join(host, x, fixtures::relabel(guest, perm)).first;
            EXPECT_TRUE(graft_isomorphic(sorted, other).has_value()) << "k=" << k;
        }
    }
}
