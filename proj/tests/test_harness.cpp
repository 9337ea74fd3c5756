#include "support.hpp"

#include <cyclepack/harness.hpp>

#include <gtest/gtest.h>

#include <fstream>

using namespace cyclepack;

namespace {

TrialConfig config(std::vector<std::size_t> lengths, std::size_t side, std::size_t trials, std::uint64_t seed) {
    TrialConfig c;
    c.profile = make_profile(std::move(lengths));
    c.side_size = side;
    c.trials = trials;
    c.seed = seed;
    return c;
}

}

TEST(Trials, TheoremRegimeAlwaysPacks) {
    auto c = config({6, 6}, 6, 100, 1);
    c.delta = 5;
    auto s = run_trials(c);
    EXPECT_EQ(s.success_rate(), 1.0);
    EXPECT_EQ(s.theorem_violations(), 0u);
    for (const auto & t : s.trials) {
        ASSERT_TRUE(t.report);
        EXPECT_TRUE(t.report->ok);
        EXPECT_TRUE(t.hypotheses_hold);
    }
}

TEST(Trials, OnlyK33) {
    auto s = run_trials(config({6}, 3, 10, 4));
    EXPECT_EQ(s.success_rate(), 1.0);
}

TEST(Trials, BelowThresholdStillWellFormed) {
    auto c = config({6, 6}, 6, 40, 2);
    c.delta = 2;
    c.fill = 0.0;
    auto s = run_trials(c);
    EXPECT_EQ(s.count(Outcome::Packing) + s.count(Outcome::Infeasible) + s.count(Outcome::Unknown), 40u);
    EXPECT_EQ(s.theorem_violations(), 0u);
    for (const auto & t : s.trials) EXPECT_FALSE(t.hypotheses_hold);
    auto j = to_json(s);
    EXPECT_EQ(j["trials"].size(), 40u);
}

TEST(Trials, ThreadCountDoesNotChangeResults) {
    auto c = config({8, 6}, 8, 24, 99);
    c.fill = 0.1;
    const auto one = deterministic_dump(run_trials(c));
    c.threads = 4;
    EXPECT_EQ(deterministic_dump(run_trials(c)), one);
    c.threads = 1;
    EXPECT_EQ(deterministic_dump(run_trials(c)), one);
}

TEST(Trials, SeedsFollowIndex) {
    auto s = run_trials(config({6}, 4, 5, 12));
    for (const auto & t : s.trials) EXPECT_EQ(t.seed, 12u ^ t.index);
}

TEST(Trials, ConfigErrors) {
    auto c = config({6}, 3, 0, 1);
    EXPECT_THROW(run_trials(c), ConfigError);
    c.trials = 1;
    c.delta = 4;
    EXPECT_THROW(run_trials(c), ConfigError);
}

TEST(Trials, Reports) {
    auto s = run_trials(config({6}, 4, 6, 3));
    auto csv = to_csv(s);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    auto j = to_json(s);
    EXPECT_TRUE(j.contains("timing"));
    EXPECT_EQ(j["aggregate"]["packing"].get<std::size_t>(), 6u);
    EXPECT_NE(to_text(s).find("success_rate"), std::string::npos);
    EXPECT_EQ(deterministic_dump(s).find("timing"), std::string::npos);
}

TEST(Exhaustive, SideThreeIsOnlyK33) {
    auto s = run_exhaustive(3, make_profile({6}));
    EXPECT_EQ(s.graphs_enumerated, 512u);
    EXPECT_EQ(s.hypothesis_satisfying, 1u);
    EXPECT_EQ(s.packed, 1u);
    EXPECT_TRUE(s.ok());
}

TEST(Exhaustive, SideFourCountsMatchDirectEnumeration) {
    for (std::size_t c : {6u, 8u}) {
        auto prof = make_profile({c});
        const std::size_t delta = degree_threshold(prof);
        std::uint64_t direct = 0;
        for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
            bool ok = true;
            for (unsigned i = 0; i < 4 && ok; ++i) {
                unsigned row = 0, col = 0;
                for (unsigned j = 0; j < 4; ++j) {
                    row += mask >> (4 * i + j) & 1u;
                    col += mask >> (4 * j + i) & 1u;
                }
                ok = row >= delta && col >= delta;
            }
            direct += ok;
        }
        auto s = run_exhaustive(4, prof);
        EXPECT_EQ(s.graphs_enumerated, 65536u);
        EXPECT_EQ(s.hypothesis_satisfying, direct);
        EXPECT_EQ(s.packed, direct);
        EXPECT_TRUE(s.violations.empty());
    }
}

TEST(Exhaustive, UnbalancedProfileHasNoCandidates) {
    auto s = run_exhaustive(2, make_profile({6}));
    EXPECT_EQ(s.hypothesis_satisfying, 0u);
    EXPECT_TRUE(s.ok());
}

TEST(Exhaustive, RefusesLargeSides) {
    EXPECT_THROW(run_exhaustive(5, make_profile({6})), ConfigError);
    EXPECT_THROW(run_exhaustive(0, make_profile({6})), ConfigError);
}

TEST(Sharpness, Certified) {
    auto r2 = run_sharpness(2);
    EXPECT_TRUE(r2.ok());
    EXPECT_EQ(r2.min_degree, 3u);
    EXPECT_EQ(r2.threshold, 4u);
    auto r4 = run_sharpness(4);
    EXPECT_TRUE(r4.ok());
    EXPECT_EQ(r4.vertices, 18u);
    EXPECT_FALSE(run_sharpness(6).certified);
    EXPECT_THROW(run_sharpness(3), std::invalid_argument);
}

TEST(Hunt, ReportsAreComplete) {
    const auto dir = std::filesystem::temp_directory_path() / "cyclepack_hunt_test";
    std::filesystem::remove_all(dir);
    auto r = run_hunt(5, make_profile({4, 6}, Mode::Conjecture), 50, 3, dir);
    EXPECT_EQ(r.certified_packings + r.counterexample_files.size(), 50u);
    EXPECT_EQ(r.uncertified, 0u);
    auto r2 = run_hunt(4, make_profile({4, 4}, Mode::Conjecture), 50, 3, dir);
    EXPECT_EQ(r2.certified_packings + r2.counterexample_files.size(), 50u);
    EXPECT_THROW(run_hunt(3, make_profile({4, 4}, Mode::Conjecture), 5, 1, dir), ConfigError);
}

TEST(Hunt, CounterexampleFilesReproduce) {
    auto s = gen_sharpness(2);
    const auto text = counterexample_text(s.graph, s.profile, 7, 3);
    auto g = parse_graph(text);
    EXPECT_EQ(g, s.graph);
    EXPECT_EQ(pack(g, s.profile).outcome, Outcome::Infeasible);
    EXPECT_NE(text.find("c seed 7 trial 3"), std::string::npos);
}

TEST(Solve, ReportShape) {
    auto g = gen_complete(3);
    auto prof = make_profile({6});
    auto j = solve_report(g, prof, pack(g, prof));
    EXPECT_EQ(j["outcome"], "packing");
    EXPECT_TRUE(j["report"]["ok"].get<bool>());
    EXPECT_TRUE(j["hypotheses"]["ok"].get<bool>());
    EXPECT_EQ(exit_code(Outcome::Packing), 0);
    EXPECT_EQ(exit_code(Outcome::Infeasible), 2);
    EXPECT_EQ(exit_code(Outcome::Unknown), 3);
}
