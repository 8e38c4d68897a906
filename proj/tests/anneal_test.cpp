#include "qplex/anneal.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "qplex/graph.hpp"
#include "qplex/qubo.hpp"
#include "qplex/rng.hpp"
#include "test_util.hpp"

using namespace qplex;

TEST(FlipTableTest, DeltaMatchesFullRecompute) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    FlipTable table(m);
    std::mt19937_64 gen(splitmix64(7));
    for (int trial = 0; trial < 10000; ++trial) {
        Assignment a(m.layout.total);
        for (auto& bit : a) bit = gen() & 1u;
        int v = int(gen() % m.layout.total);
        Assignment flipped = a;
        flipped[v] ^= 1;
        EXPECT_NEAR(table.delta(a, v), cost(m, flipped) - cost(m, a), 1e-9);
    }
}

TEST(FlipTableTest, FlippingThereAndBackSumsToZero) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    std::mt19937_64 gen(splitmix64(8));
    for (int trial = 0; trial < 200; ++trial) {
        Assignment a(m.layout.total);
        for (auto& bit : a) bit = gen() & 1u;
        int v = int(gen() % m.layout.total);
        double there = cost_delta(m, a, v);
        a[v] ^= 1;
        EXPECT_NEAR(there + cost_delta(m, a, v), 0.0, 1e-12);
    }
    EXPECT_THROW(cost_delta(m, Assignment(m.layout.total, 0), 19), std::invalid_argument);
}

TEST(FlipTableTest, IsolatedVariableDeltaIsItsLinearCoefficient) {
    QuboModel m = build_qubo(make_graph(1, {}), 1, 2.0);  // F = -x
    EXPECT_DOUBLE_EQ(cost_delta(m, {0}, 0), -1.0);
    EXPECT_DOUBLE_EQ(cost_delta(m, {1}, 0), 1.0);
}

TEST(AnnealTest, SolvesTheSingleVariableModel) {
    QuboModel m = build_qubo(make_graph(1, {}), 1, 2.0);
    AnnealReport rep = anneal(m, {.shots = 4, .sweeps = 2, .seed = 1});
    EXPECT_DOUBLE_EQ(rep.best_cost, -1.0);
    EXPECT_EQ(rep.best_assignment, Assignment{1});
    EXPECT_EQ(rep.best.size, 1);
    EXPECT_TRUE(rep.best.feasible);
}

TEST(AnnealTest, FindsTheMaximumKplexOfTheExampleGraph) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    AnnealReport rep = anneal(m, {.shots = 200, .sweeps = 20, .seed = 42});
    EXPECT_DOUBLE_EQ(rep.best_cost, -4.0);
    EXPECT_EQ(rep.best.size, 4);
    EXPECT_TRUE(rep.best.feasible);
    EXPECT_NEAR(rep.best.penalty, 0.0, 1e-12);
    EXPECT_EQ(rep.best.subset, VertexSet::of(6, {1, 2, 4, 5}));
    ASSERT_TRUE(rep.found_feasible);
    EXPECT_EQ(rep.best_feasible.size, 4);
    EXPECT_EQ(rep.best_feasible.subset, VertexSet::of(6, {1, 2, 4, 5}));
}

TEST(AnnealTest, RunsAreDeterministicForAFixedSeed) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    AnnealConfig cfg{.shots = 50, .sweeps = 5, .seed = 9001};
    AnnealReport a = anneal(m, cfg);
    AnnealReport b = anneal(m, cfg);
    EXPECT_EQ(a.best_assignment, b.best_assignment);
    EXPECT_EQ(a.shot_costs, b.shot_costs);
    ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
    for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
        EXPECT_EQ(a.trajectory[i].budget, b.trajectory[i].budget);
        EXPECT_DOUBLE_EQ(a.trajectory[i].best_cost, b.trajectory[i].best_cost);
    }
}

TEST(AnnealTest, TrajectoryIsMonotoneAndEndsAtTheBest) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    AnnealReport rep = anneal(m, {.shots = 80, .sweeps = 3, .seed = 5});
    ASSERT_EQ(rep.trajectory.size(), 80u);
    for (std::size_t i = 0; i < rep.trajectory.size(); ++i) {
        EXPECT_EQ(rep.trajectory[i].budget, int(i) + 1);
        if (i > 0)
            EXPECT_LE(rep.trajectory[i].best_cost, rep.trajectory[i - 1].best_cost);
    }
    EXPECT_DOUBLE_EQ(rep.trajectory.back().best_cost, rep.best_cost);
    EXPECT_DOUBLE_EQ(*std::min_element(rep.shot_costs.begin(), rep.shot_costs.end()),
                     rep.best_cost);
}

TEST(AnnealTest, EnlargingTheShotBudgetExtendsARun) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    AnnealReport small = anneal(m, {.shots = 40, .sweeps = 4, .seed = 77});
    AnnealReport large = anneal(m, {.shots = 80, .sweeps = 4, .seed = 77});
    ASSERT_GE(large.shot_costs.size(), small.shot_costs.size());
    for (std::size_t i = 0; i < small.shot_costs.size(); ++i)
        EXPECT_DOUBLE_EQ(large.shot_costs[i], small.shot_costs[i]);
    for (std::size_t i = 0; i < small.trajectory.size(); ++i)
        EXPECT_DOUBLE_EQ(large.trajectory[i].best_cost, small.trajectory[i].best_cost);
    EXPECT_LE(large.best_cost, small.best_cost);
}

TEST(AnnealTest, HotTemperatureDefaultsToTheLargestCoefficient) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    double want = 0.0;
    for (const auto& [v, c] : m.linear) want = std::max(want, std::abs(c));
    for (const auto& [vw, c] : m.quadratic) want = std::max(want, std::abs(c));
    AnnealReport rep = anneal(m, {.shots = 1, .seed = 3});
    EXPECT_DOUBLE_EQ(rep.config.t_hot, want);
    EXPECT_EQ(rep.config.sweeps, 2);
    EXPECT_DOUBLE_EQ(rep.config.t_cold, 0.01);
}

TEST(AnnealTest, RejectsDegenerateConfigs) {
    QuboModel m = build_qubo(testutil::g6(), 2, 2.0);
    EXPECT_THROW(anneal(m, {.shots = 0}), std::invalid_argument);
    EXPECT_THROW(anneal(m, {.sweeps = 0}), std::invalid_argument);
    EXPECT_THROW(anneal(m, {.t_cold = 0.0}), std::invalid_argument);
    EXPECT_THROW(anneal(m, {.t_hot = 0.005, .t_cold = 0.01}), std::invalid_argument);
}
