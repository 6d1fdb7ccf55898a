/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/inequalities.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qbe;

TEST(Inequalities, WeylBoundOnCommutingPair) {
  // tr A^½ − tr B^½ for diag(1/2,1/2) vs diag(1,0): √2 − 1; rhs 5·2·(1/2)^½.
  Matrix a = Matrix::Identity(2, 2) / 2.0, b = Matrix::Zero(2, 2);
  b(0, 0) = 1.0;
  auto c = weyl_perturbation_bound(a, b, 0.5);
  EXPECT_NEAR(c.lhs, std::sqrt(2.0) - 1.0, 1e-12);
  EXPECT_NEAR(c.rhs, 10.0 * std::sqrt(0.5), 1e-12);
  EXPECT_TRUE(c.holds());
}

TEST(Inequalities, HolderEqualityOnEigenvector) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 0.36;
  Vector e0 = Vector::Unit(2, 0);
  auto c = holder_power_norm_check(a, e0, 0.5);
  EXPECT_NEAR(c.lhs, 0.6, 1e-12);
  EXPECT_NEAR(c.rhs, 0.6, 1e-12);
  EXPECT_THROW(holder_power_norm_check(a, e0, 1.5), ValidationError);
}

TEST(Inequalities, TruncationWithZeroDeltaIsEmpty) {
  Matrix rho = ginibre_state(4, 2, 1), sigma = ginibre_state(4, 3, 2);
  auto c = trace_distance_truncation_bound(0.5 * (rho - sigma), 0.5 * (rho + sigma), 1.0, 0.0, 3);
  EXPECT_EQ(c.lhs, 0.0);
  EXPECT_EQ(c.rhs, 0.0);
  EXPECT_TRUE(c.holds());
}

TEST(Inequalities, SuitesPassOnSmallSweeps) {
  for (const auto &name : suite_names()) {
    auto r = run_suite(name, name == "sandwich" ? 10 : 100, 1);
    EXPECT_TRUE(r.passed()) << name << " worst " << r.worst_ratio;
    EXPECT_EQ(r.trials, name == "sandwich" ? 10 : 100);
  }
  auto t0 = run_suite("truncation", 50, 2, 0.0);
  EXPECT_EQ(t0.violations, 0);
  EXPECT_EQ(t0.worst_ratio, 0.0);
  EXPECT_THROW(run_suite("jensen", 1, 0), ValidationError);
}

TEST(Inequalities, SuitesAreDeterministic) {
  auto a = run_suite("weyl", 50, 7), b = run_suite("weyl", 50, 7);
  EXPECT_EQ(a.worst_ratio, b.worst_ratio);
}
