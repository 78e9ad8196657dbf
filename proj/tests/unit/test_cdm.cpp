#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mobles/cdm.hpp"
#include "oracles.hpp"

using namespace mobles;

TEST(LengthQuantity, Examples) {
    EXPECT_DOUBLE_EQ(length_quantity({0, 10}, {2, 4}), 5.0);
    EXPECT_DOUBLE_EQ(length_quantity({0, 1}, {0, 2}), 0.0);
    EXPECT_DOUBLE_EQ(length_quantity({0, 2}, {1, 3}), 0.0);
}

TEST(LengthQuantity, DegenerateSubspaceInterval) {
    EXPECT_EQ(length_quantity({0, 1}, {0.5, 0.5}), kUnbounded);
    EXPECT_DOUBLE_EQ(length_quantity({1, 1}, {1, 1}), 0.0);
}

TEST(OverlapDistance, Examples) {
    EXPECT_NEAR(overlap_distance_quantity(3.2, 3.0, {0, 10}, {2, 4}), oracle::erfinv(0.8), 1e-12);
    EXPECT_NEAR(oracle::erfinv(0.8), 0.906194, 1e-6);
    EXPECT_DOUBLE_EQ(default_overlap_fn(0.5), 0.0);
    EXPECT_DOUBLE_EQ(default_overlap_fn(0.6), 0.0);
    EXPECT_EQ(default_overlap_fn(0.0), kUnbounded);
}

TEST(OverlapDistance, ZeroLengthOverlap) {
    EXPECT_DOUBLE_EQ(overlap_distance_quantity(1.0, 2.0, {0, 1}, {1, 2}), 0.0);
    EXPECT_EQ(overlap_distance_quantity(1.0, 1.0, {0, 1}, {1, 2}), kUnbounded);
}

TEST(ConfidenceDegree, Examples) {
    EXPECT_DOUBLE_EQ(confidence_degree(0.5, 2.5, {0, 1}, {2, 3}), 0.0);
    EXPECT_NEAR(confidence_degree(3.2, 3.0, {0, 10}, {2, 4}), 5.0 * oracle::erfinv(0.8), 1e-11);
    EXPECT_NEAR(confidence_degree(3.2, 3.0, {0, 10}, {2, 4}), 4.53097, 1e-5);
    EXPECT_DOUBLE_EQ(confidence_degree(5.0, 3.0, {0, 10}, {2, 4}), 0.0);
}

TEST(ConfidenceDegree, SentinelArithmetic) {
    // f = 0 with g = inf gives 0.
    EXPECT_DOUBLE_EQ(confidence_degree(1.0, 1.0, {0, 2}, {0, 2}), 0.0);
    // finite f with g = inf gives inf.
    EXPECT_EQ(confidence_degree(1.0, 1.0, {0, 4}, {0, 2}), kUnbounded);
}

TEST(ConfidenceDegree, Properties) {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(-5.0, 5.0), w(0.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = u(gen), b = u(gen);
        const ConfidenceInterval full{a, a + 2 * w(gen) + 0.1};
        const ConfidenceInterval sub{b, b + w(gen) + 0.05};
        const double qf = full.lo + w(gen) * full.length() / 3.0;
        const double qs = sub.lo + w(gen) * sub.length() / 3.0;
        const double cd = confidence_degree(qf, qs, full, sub);
        EXPECT_GE(cd, 0.0);
        if (overlap_length(full, sub) < 0) EXPECT_EQ(cd, 0.0);
        const double shift = u(gen);
        const double shifted =
            confidence_degree(qf + shift, qs + shift, {full.lo + shift, full.hi + shift}, {sub.lo + shift, sub.hi + shift});
        if (std::isinf(cd)) {
            EXPECT_TRUE(std::isinf(shifted));
        } else {
            EXPECT_NEAR(shifted, cd, 1e-6 * (1 + cd));
        }
    }
}

TEST(ConfidenceDegree, Monotonicity) {
    const ConfidenceInterval full{0, 10};
    double prev_f = -1.0;
    for (double len = 9.0; len > 0.5; len -= 0.25) {
        const double f = length_quantity(full, {2, 2 + len});
        EXPECT_GE(f, prev_f);
        prev_f = f;
    }
    double prev_g = kUnbounded;
    for (double d = 0.0; d < 3.0; d += 0.05) {
        const double g = overlap_distance_quantity(3.0 + d, 3.0, full, {2, 4});
        EXPECT_LE(g, prev_g);
        prev_g = g;
    }
}

TEST(Erfinv, Examples) {
    EXPECT_EQ(erfinv(0.0), 0.0);
    EXPECT_NEAR(erfinv(0.8), 0.9061938, 1e-7);
    EXPECT_EQ(erfinv(1.0), kUnbounded);
    EXPECT_EQ(erfinv(-1.0), -kUnbounded);
    EXPECT_EQ(erfinv(2.0), kUnbounded);
}

TEST(Erfinv, OddSymmetry) {
    for (double x = -0.999; x < 1.0; x += 0.0137) EXPECT_NEAR(erfinv(-x), -erfinv(x), 1e-12);
}

TEST(Erfinv, MatchesOracle) {
    for (double x : {-1 + 1e-9, -0.9999, -0.5, -1e-8, 1e-8, 0.3, 0.95, 0.999999, 1 - 1e-9})
        EXPECT_NEAR(erfinv(x), oracle::erfinv(x), 1e-7) << x;
}

TEST(EpsilonGreedy, Examples) {
    const std::vector<double> q{5.0, 1.0, 2.0, 0.0};
    const auto p = epsilon_greedy_probs(q, 0.1);
    EXPECT_NEAR(p[0], 0.925, 1e-15);
    for (int a = 1; a < 4; ++a) EXPECT_NEAR(p[static_cast<std::size_t>(a)], 0.025, 1e-15);
    for (double v : epsilon_greedy_probs(q, 1.0)) EXPECT_DOUBLE_EQ(v, 0.25);
    const auto tie = epsilon_greedy_probs(std::vector<double>{1.0, 1.0}, 0.0);
    EXPECT_DOUBLE_EQ(tie[0], 0.5);
    EXPECT_DOUBLE_EQ(tie[1], 0.5);
    EXPECT_THROW(epsilon_greedy_probs(std::vector<double>{}, 0.1), std::invalid_argument);
}

TEST(Fuse, AllZeroDegreesReturnsFullExactly) {
    const std::vector<double> full{0.925, 0.025, 0.025, 0.025};
    const auto out = fuse(full, {{0.25, 0.25, 0.25, 0.25}}, {{0, 0, 0, 0}});
    EXPECT_EQ(out, full);
}

TEST(Fuse, SingleActionSubstitution) {
    const std::vector<double> full{0.925, 0.025, 0.025, 0.025};
    const auto out = fuse(full, {{0.025, 0.925, 0.025, 0.025}}, {{0, 2, 0, 0}});
    EXPECT_NEAR(out[0], 0.925 / 1.9, 1e-15);
    EXPECT_NEAR(out[1], 0.925 / 1.9, 1e-15);
    EXPECT_NEAR(out[2], 0.025 / 1.9, 1e-15);
    EXPECT_NEAR(out[0], 0.4868, 1e-4);
    EXPECT_NEAR(out[3], 0.0132, 1e-4);
}

TEST(Fuse, DegreeMustExceedOne) {
    const std::vector<double> full{0.925, 0.025, 0.025, 0.025};
    EXPECT_EQ(fuse(full, {{0.025, 0.925, 0.025, 0.025}}, {{0, 1.0, 0, 0}}), full);
}

TEST(Fuse, TiesGoToEarlierSubspace) {
    const std::vector<std::vector<double>> cds{{3, 0}, {3, 0}};
    EXPECT_EQ(fusion_source(cds, 0), 0);
    EXPECT_EQ(fusion_source(cds, 1), -1);
    EXPECT_EQ(fusion_source({{2, 0}, {5, 0}}, 0), 1);
}

TEST(Fuse, OutputIsProbabilityVector) {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const std::size_t subs = 1 + gen() % 4;
        std::vector<double> q(4);
        for (auto& v : q) v = u(gen);
        const auto full = epsilon_greedy_probs(q, 0.1);
        std::vector<std::vector<double>> sp, cds;
        for (std::size_t x = 0; x < subs; ++x) {
            for (auto& v : q) v = u(gen);
            sp.push_back(epsilon_greedy_probs(q, 0.1));
            std::vector<double> row(4);
            for (auto& v : row) v = u(gen) < 0.2 ? kUnbounded : 3 * u(gen);
            cds.push_back(row);
        }
        const auto out = fuse(full, sp, cds);
        double total = 0.0;
        for (double p : out) {
            EXPECT_GE(p, 0.0);
            total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        const auto w = decision_weights(cds, 4);
        double wsum = w.full;
        for (double x : w.subspaces) wsum += x;
        EXPECT_EQ(wsum, 1.0);
    }
}

TEST(Fuse, ShapeMismatch) {
    const std::vector<double> full{0.5, 0.5};
    EXPECT_THROW(fuse(full, {{0.5, 0.5}}, {}), std::invalid_argument);
    EXPECT_THROW(fuse(full, {{1.0}}, {{0.0}}), std::invalid_argument);
}

TEST(DecisionWeights, Examples) {
    auto w = decision_weights({{0, 0, 0, 0}}, 4);
    EXPECT_DOUBLE_EQ(w.full, 1.0);
    EXPECT_DOUBLE_EQ(w.subspaces[0], 0.0);
    w = decision_weights({{2, 2, 5, kUnbounded}, {0, 0, 0, 0}}, 4);
    EXPECT_DOUBLE_EQ(w.subspaces[0], 1.0);
    EXPECT_DOUBLE_EQ(w.full, 0.0);
    w = decision_weights({{0, 1.5, 0, 0}}, 4);
    EXPECT_DOUBLE_EQ(w.subspaces[0], 0.25);
    EXPECT_DOUBLE_EQ(w.full, 0.75);
}
