#include "support.hpp"

#include <gtest/gtest.h>

using namespace cyclepack;

TEST(Cycles, CompleteGraphs) {
    auto k33 = gen_complete(3);
    auto c = find_spanning_cycle(k33, k33.vertices());
    ASSERT_TRUE(c);
    EXPECT_EQ(c->size(), 6u);
    EXPECT_TRUE(is_cycle(k33, *c));
    EXPECT_FALSE(find_cycle(k33, k33.vertices(), 8));
    auto four = find_cycle(k33, k33.vertices(), 4);
    ASSERT_TRUE(four);
    EXPECT_EQ(four->size(), 4u);
}

TEST(Cycles, TreesHaveNone) {
    BipartiteGraph star(1, 4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    EXPECT_FALSE(find_cycle(star, star.vertices(), 4));
}

TEST(Cycles, PathAndCyclePredicates) {
    auto c8 = testing_support::cycle_host(8);
    auto order = testing_support::cycle_host_order(8);
    EXPECT_TRUE(is_cycle(c8, order));
    EXPECT_TRUE(is_path(c8, order));
    auto broken = order;
    std::swap(broken[0], broken[2]);
    EXPECT_FALSE(is_cycle(c8, broken));
    EXPECT_FALSE(is_cycle(c8, {0, 4, 0, 4}));
    EXPECT_FALSE(is_path(c8, {0, 0}));
}

TEST(Cycles, ShortestAboveBoundMatchesEnumeration) {
    Rng rng(5150);
    for (int round = 0; round < 150; ++round) {
        auto g = testing_support::random_graph(2 + rng.below(5), 2 + rng.below(5), 0.3 + 0.5 * rng.unit(), rng);
        VertexSet s(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (rng.coin(0.85)) s.insert(v);
        auto cycles = testing_support::all_cycle_sets(g, s.to_vector());
        for (std::size_t lo : {4u, 6u, 8u}) {
            std::optional<std::size_t> want;
            for (auto [mask, len] : cycles)
                if (len >= lo && (! want || len < *want)) want = len;
            auto got = find_cycle(g, s, lo);
            ASSERT_EQ(got.has_value(), want.has_value()) << serialize_graph(g);
            if (got) {
                EXPECT_EQ(got->size(), *want);
                EXPECT_TRUE(is_cycle(g, *got));
                for (Vertex v : *got) EXPECT_TRUE(s.contains(v));
            }
        }
    }
}

TEST(Cycles, BudgetReportsExhaustion) {
    auto g = gen_random_mindeg(14, 14, 2, 3, 0.0);
    bool exhausted = false;
    CycleSearchOptions opt;
    opt.node_budget = 1;
    opt.exhausted = &exhausted;
    auto r = find_cycle(g, g.vertices(), 28, opt);
    EXPECT_TRUE(r || exhausted);

    opt.node_budget = 0;
    find_cycle(g, g.vertices(), 28, opt);
    EXPECT_FALSE(exhausted);
}
