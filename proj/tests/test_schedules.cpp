/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/numerics.hpp"
#include "qbe/schedules.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

using namespace qbe;

namespace {
const Floors kNoFloors{1e-300, 1e-300};
}

TEST(Schedules, TheoryBoundMeetsEpsilon) {
  for (int r : {1, 2, 4, 8}) {
    EXPECT_LE(plan_von_neumann(r, 0.1, kNoFloors).bound_theory, 0.1 * (1 + 1e-12));
    for (double a : {0.5, 2.0, 3.0})
      EXPECT_LE(plan_trace_power(a, r, 0.1, kNoFloors).bound_theory, 0.1 * (1 + 1e-12)) << a;
    for (double a : {1.0, 2.0})
      EXPECT_LE(plan_trace_distance(a, r, 0.1, kNoFloors).bound_theory, 0.1 * (1 + 1e-12)) << a;
    for (double a : {0.5, 1.0 / 3.0})
      EXPECT_LE(plan_fidelity(a, r, 0.1, kNoFloors).bound_theory, 0.1 * (1 + 1e-12)) << a;
  }
}

// For α < 1 the truncation threshold δ₁ ~ (ε/8r)^{2/α} reaches ~1e-9 at r = 2,
// where the 1e-12 circuit precision times the 16/δ₁ rescale alone exceeds ε:
// the tightening loop runs out and the plan reports it.
TEST(Schedules, FractionalTraceDistanceExhaustsBudgetAtDoublePrecision) {
  EXPECT_LE(plan_trace_distance(0.5, 1, 0.1, kNoFloors).bound_theory, 0.1);
  auto p = plan_trace_distance(0.5, 2, 0.1, kNoFloors);
  EXPECT_EQ(p.rounds, kMaxTighteningRounds);
  EXPECT_GT(p.bound_theory, 0.1);
}

TEST(Schedules, WithoutFloorsRealizedEqualsTheory) {
  auto p = plan_trace_distance(1.0, 4, 0.1, kNoFloors);
  EXPECT_FALSE(p.clamped);
  EXPECT_EQ(p.realized, p.theory);
  EXPECT_TRUE(p.certified(0.1));
}

TEST(Schedules, FloorsClampAndReevaluate) {
  auto p = plan_von_neumann(8, 0.1, Floors{});
  EXPECT_TRUE(p.clamped);
  for (const auto &[k, v] : p.realized) {
    if (k.rfind("delta", 0) == 0) {
      EXPECT_GE(v, 1e-3) << k;
    }
  }
  EXPECT_GE(p.bound_realized, p.bound_theory);
  EXPECT_EQ(p.certified(0.1), p.bound_realized <= 0.1 * (1 + 1e-12));
}

TEST(Schedules, FloorsFromEnvironment) {
  ::setenv("QBE_DELTA_FLOOR", "0.01", 1);
  ::setenv("QBE_EPSILON_FLOOR", "0.002", 1);
  Floors f = Floors::from_env();
  EXPECT_DOUBLE_EQ(f.delta, 0.01);
  EXPECT_DOUBLE_EQ(f.epsilon, 0.002);
  ::unsetenv("QBE_DELTA_FLOOR");
  ::unsetenv("QBE_EPSILON_FLOOR");
  EXPECT_DOUBLE_EQ(Floors::from_env().delta, 1e-3);
}

TEST(Schedules, OddTracePowerIsRankIndependent) {
  auto a = planned_cost("tsallis", 3.0, 2, 0.1), b = planned_cost("tsallis", 3.0, 16, 0.1);
  EXPECT_EQ(a.total(), b.total());
  EXPECT_GT(a.total(), 0.0);
}

TEST(Schedules, PlannedCostGrowsWithRankAndPrecision) {
  for (const char *q : {"von-neumann", "trace-distance", "fidelity"}) {
    double alpha = std::string(q) == "fidelity" ? 0.5 : 1.0;
    EXPECT_LT(planned_cost(q, alpha, 2, 0.1).total(), planned_cost(q, alpha, 8, 0.1).total()) << q;
    EXPECT_LT(planned_cost(q, alpha, 4, 0.1).total(), planned_cost(q, alpha, 4, 0.05).total()) << q;
  }
  EXPECT_THROW(planned_cost("purity", 1.0, 2, 0.1), ValidationError);
}

TEST(Schedules, FidelityCountsBothOracles) {
  auto c = planned_cost("fidelity", 0.5, 4, 0.1);
  EXPECT_GT(c.queries_rho, 0.0);
  EXPECT_GT(c.queries_sigma, 0.0);
}

TEST(Schedules, LogLogSlope) {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x)
    y.push_back(3.0 * v * v * std::sqrt(v));
  EXPECT_NEAR(loglog_slope(x, y), 2.5, 1e-12);
  EXPECT_THROW(loglog_slope({1.0}, {1.0}), ValidationError);
}

TEST(Schedules, PositivePowerErrorHelpers) {
  // Both helpers dominate their first argument-free terms.
  EXPECT_GE(positive_power_block_error(0.5, 0.01, 1e-3), 1.5e-3);
  EXPECT_GE(positive_power_density_error(0.5, 0.01, 1e-3), 0.01 * (0.55 * 0.55 + 0.25));
}
