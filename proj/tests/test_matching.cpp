#include "support.hpp"

#include <gtest/gtest.h>

using namespace cyclepack;

namespace {

void expect_valid(const InducedView & view, const Matching & m) {
    std::size_t pairs = 0;
    for (Vertex v = 0; v < m.universe(); ++v) {
        if (! m.matched(v)) continue;
        const Vertex w = m.partner(v);
        EXPECT_EQ(m.partner(w), v);
        EXPECT_TRUE(view.adjacent(v, w));
        ++pairs;
    }
    EXPECT_EQ(pairs, 2 * m.size());
}

/// Strict alternation, simplicity, and no legal continuation at the end.
void expect_maximal_alternating(const InducedView & view, const Matching & m, const std::vector<Vertex> & p, bool first_in_m) {
    ASSERT_FALSE(p.empty());
    std::set<Vertex> seen(p.begin(), p.end());
    EXPECT_EQ(seen.size(), p.size());
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        EXPECT_TRUE(view.adjacent(p[i], p[i + 1]));
        const bool want_m = (i % 2 == 0) == first_in_m;
        EXPECT_EQ(m.contains_edge(p[i], p[i + 1]), want_m) << "edge " << i;
    }
    const bool next_in_m = ((p.size() - 1) % 2 == 0) == first_in_m;
    const Vertex end = p.back();
    for (Vertex w : view.neighbors(end)) {
        if (seen.count(w)) continue;
        EXPECT_NE(m.contains_edge(end, w), next_in_m) << "path extendable at " << end << " by " << w;
    }
}

}

TEST(Matching, SmallCases) {
    auto k33 = gen_complete(3);
    EXPECT_EQ(max_matching(induced(k33, k33.vertices())).size(), 3u);
    BipartiteGraph star(1, 4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    EXPECT_EQ(max_matching(induced(star, star.vertices())).size(), 1u);
    BipartiteGraph none(2, 2, std::vector<Edge>{});
    EXPECT_EQ(max_matching(induced(none, none.vertices())).size(), 0u);
    EXPECT_EQ(max_matching(induced(k33, k33.empty_set())).size(), 0u);
}

TEST(Matching, AgreesWithExhaustiveSearch) {
    Rng rng(314);
    for (int round = 0; round < 200; ++round) {
        auto g = testing_support::random_graph(1 + rng.below(7), 1 + rng.below(7), rng.unit(), rng);
        VertexSet s(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (rng.coin(0.8)) s.insert(v);
        if (s.count() > 12) continue;
        auto view = induced(g, s);
        auto m = max_matching(view);
        expect_valid(view, m);
        EXPECT_EQ(m.size(), testing_support::brute_matching_size(view.edges())) << serialize_graph(g);
    }
}

TEST(Matching, Deterministic) {
    auto g = gen_random_mindeg(9, 9, 3, 17, 0.2);
    auto a = max_matching(induced(g, g.vertices()));
    auto b = max_matching(induced(g, g.vertices()));
    EXPECT_EQ(a.pairs(g), b.pairs(g));
}

TEST(AlternatingPath, SingleMatchedEdge) {
    BipartiteGraph g(1, 1, std::vector<Edge>{{0, 1}});
    Matching m(2);
    m.add(0, 1);
    auto view = induced(g, g.vertices());
    EXPECT_EQ(longest_alternating_path(view, m, 0, true), (std::vector<Vertex>{0, 1}));
}

TEST(AlternatingPath, EmptyMatchingStopsAfterOneEdge) {
    auto g = gen_complete(2);
    Matching m(4);
    auto p = longest_alternating_path(induced(g, g.vertices()), m, 0, false);
    EXPECT_EQ(p.size(), 2u);
    EXPECT_EQ(p.front(), 0u);
}

TEST(AlternatingPath, FourVertexPath) {
    // a=0 (X), b=2 (Y), c=1 (X), d=3 (Y): a-b-c-d with M = {bc}
    BipartiteGraph g(2, 2, std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
    Matching m(4);
    m.add(1, 2);
    auto view = induced(g, g.vertices());
    EXPECT_EQ(longest_alternating_path(view, m, 0, false), (std::vector<Vertex>{0, 2, 1, 3}));
}

TEST(AlternatingPath, Errors) {
    auto g = gen_complete(2);
    Matching m(4);
    auto view = induced(g, VertexSet::of(4, std::vector<Vertex>{0, 2}));
    EXPECT_THROW(longest_alternating_path(view, m, 1, false), std::invalid_argument);
    EXPECT_THROW(longest_alternating_path(view, m, 0, true), std::invalid_argument);
}

TEST(AlternatingPath, AlwaysMaximal) {
    Rng rng(77);
    for (int round = 0; round < 200; ++round) {
        auto g = testing_support::random_graph(2 + rng.below(6), 2 + rng.below(6), 0.2 + 0.6 * rng.unit(), rng);
        auto view = induced(g, g.vertices());
        auto m = max_matching(view);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            expect_maximal_alternating(view, m, longest_alternating_path(view, m, v, false), false);
            if (m.matched(v)) expect_maximal_alternating(view, m, longest_alternating_path(view, m, v, true), true);
        }
    }
}
