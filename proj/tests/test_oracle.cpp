#include "support.hpp"

#include <gtest/gtest.h>

using namespace cyclepack;

TEST(Oracle, SmallCases) {
    auto pk = brute_force_pack(gen_complete(3), make_profile({6}));
    ASSERT_TRUE(pk);
    EXPECT_TRUE(verify_packing(gen_complete(3), make_profile({6}), *pk).ok);
    EXPECT_FALSE(brute_force_pack(testing_support::cycle_host(6), make_profile({6, 6})));
    auto s = gen_sharpness(2);
    EXPECT_FALSE(brute_force_pack(s.graph, s.profile));
    EXPECT_FALSE(brute_force_pack(s.graph, make_profile({6, 4}, Mode::Conjecture)));
}

TEST(Oracle, SharpnessFourIsInfeasibleButLowerProfilesFit) {
    auto s = gen_sharpness(4);
    EXPECT_FALSE(brute_force_pack(s.graph, s.profile));
    // The same host does hold three 4-cycles, so the refusal is about the 6-cycle.
    EXPECT_TRUE(brute_force_pack(s.graph, make_profile({4, 4, 4}, Mode::Conjecture)));
}

TEST(Oracle, RefusesAboveLimit) {
    auto g = gen_complete(10);
    EXPECT_THROW(brute_force_pack(g, make_profile({6}), 18), OracleRefused);
    EXPECT_THROW(brute_force_pack(gen_complete(13), make_profile({6}), 100), OracleRefused);
    EXPECT_TRUE(brute_force_pack(g, make_profile({6}), 20));
}

TEST(Oracle, AgreesWithPartitionEnumeration) {
    const std::vector<std::vector<std::size_t>> profiles{{4}, {6}, {4, 4}, {4, 6}, {6, 6}};
    Rng rng(300);
    std::size_t feasible = 0;
    for (int round = 0; round < 300; ++round) {
        const std::size_t x = 2 + rng.below(5), y = 2 + rng.below(5);
        auto g = testing_support::random_graph(x, y, 0.3 + 0.6 * rng.unit(), rng);
        auto prof = make_profile(profiles[rng.below(profiles.size())], Mode::Conjecture);
        auto pk = brute_force_pack(g, prof);
        testing_support::PartitionOracle second(g);
        ASSERT_EQ(pk.has_value(), second.feasible(prof.lengths())) << prof.describe() << "\n" << serialize_graph(g);
        if (pk) {
            ++feasible;
            EXPECT_TRUE(verify_packing(g, prof, *pk).ok);
        }
    }
    // The sample should exercise both verdicts.
    EXPECT_GT(feasible, 30u);
    EXPECT_LT(feasible, 270u);
}

TEST(Oracle, EnvironmentLimit) {
    setenv("CYCLEPACK_ORACLE_LIMIT", "12", 1);
    EXPECT_EQ(oracle_limit_from_env(), 12u);
    setenv("CYCLEPACK_ORACLE_LIMIT", "junk", 1);
    EXPECT_EQ(oracle_limit_from_env(), default_oracle_limit);
    unsetenv("CYCLEPACK_ORACLE_LIMIT");
    EXPECT_EQ(oracle_limit_from_env(), default_oracle_limit);
}
