#include <cyclepack.hpp>

#include <gtest/gtest.h>

using namespace cyclepack;

TEST(Generators, Complete) {
    EXPECT_EQ(gen_complete(3).edge_count(), 9u);
    EXPECT_EQ(min_degree(gen_complete(3)), 3u);
    EXPECT_EQ(gen_complete(1).edge_count(), 1u);
    EXPECT_EQ(gen_complete(5).edge_count(), 25u);
    EXPECT_THROW(gen_complete(0), std::invalid_argument);
}

TEST(Generators, RandomForcedComplete) { EXPECT_EQ(gen_random_mindeg(6, 6, 6, 1), gen_complete(6)); }

TEST(Generators, RandomRespectsFloorAndSeed) {
    EXPECT_NO_THROW(gen_random_mindeg(4, 4, 0, 1));
    EXPECT_GE(min_degree(gen_random_mindeg(6, 6, 5, 42)), 5u);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t x = 1 + seed % 9, y = 1 + (seed / 3) % 9, d = seed % (std::min(x, y) + 1);
        for (double fill : {0.0, 0.5}) {
            auto g = gen_random_mindeg(x, y, d, seed, fill);
            ASSERT_GE(min_degree(g), d) << x << "+" << y << " delta " << d << " seed " << seed;
            EXPECT_EQ(g, gen_random_mindeg(x, y, d, seed, fill));
        }
    }
    EXPECT_NE(gen_random_mindeg(8, 8, 3, 1), gen_random_mindeg(8, 8, 3, 2));
    EXPECT_THROW(gen_random_mindeg(3, 5, 4, 0), std::invalid_argument);
}

TEST(Generators, SparseFillIsRegularOnEqualSides) {
    auto g = gen_random_mindeg(7, 7, 3, 5, 0.0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(degree(g, v), 3u);
}

TEST(Generators, SharpnessK2) {
    auto s = gen_sharpness(2);
    EXPECT_EQ(s.graph.vertex_count(), 10u);
    EXPECT_EQ(min_degree(s.graph), 3u);
    EXPECT_EQ(s.profile.lengths(), (std::vector<std::size_t>{6, 4}));
    EXPECT_EQ(s.profile.mode(), Mode::Conjecture);
    EXPECT_EQ(degree(s.graph, s.u), 3u);
    EXPECT_TRUE(s.graph.adjacent(s.u, s.v));
    // Y1 are the Y vertices adjacent to u other than v; they also see all of X1.
    for (Vertex w : s.graph.neighbors(s.u)) {
        if (w == s.v) continue;
        EXPECT_EQ(s.graph.side(w), Side::Y);
        EXPECT_EQ(degree(s.graph, w), 3u);
    }
}

TEST(Generators, SharpnessFamily) {
    for (std::size_t k : {2u, 4u, 6u, 8u}) {
        auto s = gen_sharpness(k);
        EXPECT_EQ(s.graph.vertex_count(), 4 * k + 2);
        EXPECT_EQ(min_degree(s.graph), k + 1);
        for (Vertex v = 0; v < s.graph.vertex_count(); ++v) EXPECT_EQ(degree(s.graph, v), k + 1);
        EXPECT_EQ(degree_threshold(s.profile), k + 2);
        EXPECT_EQ(s.profile.k(), k);
    }
    EXPECT_EQ(gen_sharpness(4).profile.lengths(), (std::vector<std::size_t>{6, 4, 4, 4}));
    EXPECT_THROW(gen_sharpness(3), std::invalid_argument);
    EXPECT_THROW(gen_sharpness(0), std::invalid_argument);
}
