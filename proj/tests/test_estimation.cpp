/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/estimation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qbe;

namespace {

// Coarser floors keep polynomial degrees small; the accuracy checks here are
// against ε = 0.1 and the realized errors stay far below it.
const Floors kTestFloors{1e-2, 1e-3};

PurifiedAccessOracle oracle_of(const Matrix &m, const std::string &name = "rho") {
  return purification_of(SubnormalizedDensityOperator(m), name);
}

Matrix diag(std::initializer_list<double> v) {
  RealVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v)
    d(i++) = x;
  return d.cast<cplx>().asDiagonal();
}

AmplitudeEstimatorConfig analytic() { return {}; }

} // namespace

TEST(Estimation, VonNeumannOnMaximallyMixed) {
  auto r = estimate_von_neumann(oracle_of(Matrix::Identity(4, 4) / 4.0), 4, 0.1, analytic(),
                                kTestFloors);
  EXPECT_NEAR(r.estimate, std::log(4.0), 0.1);
  ASSERT_TRUE(r.true_value);
  EXPECT_NEAR(*r.true_value, std::log(4.0), 1e-12);
  EXPECT_GT(r.ledger.queries_U_rho, 0.0);
  EXPECT_EQ(r.ledger.queries_U_sigma, 0.0);
  EXPECT_EQ(r.repetitions, trace_estimation_repetitions(r.upper_bound, r.epsilon_ae));
}

TEST(Estimation, TracePowerOddIntegerOnDiag31) {
  auto r = estimate_trace_power(oracle_of(diag({0.75, 0.25})), 3.0, 2, 0.05, analytic(),
                                kTestFloors);
  EXPECT_NEAR(r.estimate, 0.75 * 0.75 * 0.75 + 0.25 * 0.25 * 0.25, 0.05);
  EXPECT_EQ(r.case_label, "odd");
}

TEST(Estimation, RenyiAndTsallis) {
  Matrix rho = ginibre_state(4, 2, 21);
  for (double a : {0.5, 2.0}) {
    auto re = estimate_renyi(oracle_of(rho), a, 2, 0.1, analytic(), std::nullopt, kTestFloors);
    EXPECT_NEAR(re.estimate, exact_quantity(Quantity::Renyi, a, rho), 0.1) << a;
    auto ts = estimate_tsallis(oracle_of(rho), a, 2, 0.1, analytic(), std::nullopt, kTestFloors);
    EXPECT_NEAR(ts.estimate, exact_quantity(Quantity::Tsallis, a, rho), 0.1) << a;
  }
  EXPECT_THROW(estimate_renyi(oracle_of(rho), 1.0, 2, 0.1, analytic(), std::nullopt, kTestFloors),
               ValidationError);
  EXPECT_THROW(estimate_renyi(oracle_of(rho), 0.0, 2, 0.1, analytic(), std::nullopt, kTestFloors),
               ValidationError);
}

TEST(Estimation, TraceDistanceOfIdenticalStatesIsZero) {
  Matrix rho = ginibre_state(4, 2, 3);
  auto r = estimate_trace_distance(oracle_of(rho), oracle_of(rho, "sigma"), 1.0, 2, 0.1, analytic(),
                                   kTestFloors);
  EXPECT_NEAR(r.estimate, 0.0, 0.1);
  EXPECT_GT(r.ledger.queries_U_sigma, 0.0);
  EXPECT_EQ(r.ledger.queries_U_rho, r.ledger.queries_U_sigma);
}

TEST(Estimation, TraceDistanceOfOrthogonalPureStates) {
  Matrix a = diag({1.0, 0.0}), b = diag({0.0, 1.0});
  auto r = estimate_trace_distance(oracle_of(a), oracle_of(b, "sigma"), 2.0, 1, 0.1, analytic(),
                                   kTestFloors);
  EXPECT_NEAR(r.estimate, 0.5, 0.1); // Σ |±1/2|² = 1/2
}

TEST(Estimation, FidelityOnGeneratedPair) {
  Matrix rho = ginibre_state(4, 2, 5), sigma = ginibre_state(4, 2, 6);
  auto r = estimate_fidelity(oracle_of(rho), oracle_of(sigma, "sigma"), 0.5, 2, 0.1, analytic(),
                             kTestFloors);
  ASSERT_TRUE(r.true_value);
  // The purified copy differs from ρ in the last bits; σ^{1/2} amplifies that
  // on the null space to ~1e-8.
  EXPECT_NEAR(*r.true_value, exact_quantity(Quantity::Fidelity, 0.5, rho, sigma), 1e-7);
  EXPECT_NEAR(r.estimate, *r.true_value, 0.1);
  EXPECT_GT(r.ledger.queries_U_rho, 0.0);
  EXPECT_GT(r.ledger.queries_U_sigma, 0.0);
}

TEST(Estimation, MaxEntropyAndExactRankWithKappa) {
  Matrix rho = diag({0.5, 0.3, 0.2, 0.0});
  auto m = estimate_max_entropy(oracle_of(rho), 0.1, 0.1, analytic(), 5.0, kTestFloors);
  EXPECT_NEAR(m.estimate, std::log(3.0), 0.1);
  EXPECT_EQ(estimate_exact_rank(oracle_of(rho), 5.0, analytic(), kTestFloors), 3);
  // κ = 4 is violated by the eigenvalue 0.2.
  EXPECT_THROW(estimate_exact_rank(oracle_of(rho), 4.0, analytic(), kTestFloors),
               ValidationError);
}

TEST(Estimation, TsallisZeroIsRankMinusOne) {
  Matrix rho = diag({0.5, 0.3, 0.2, 0.0});
  auto t = estimate_tsallis(oracle_of(rho), 0.0, 3, 0.1, analytic(), 5.0, kTestFloors);
  EXPECT_NEAR(t.estimate, 2.0, 0.1);
}

TEST(Estimation, DistributionOracleTsallisThree) {
  RealVector p = RealVector::Constant(4, 0.25);
  auto o = distribution_to_purified_oracle(p);
  EXPECT_LT((o.encoded() - Matrix::Identity(4, 4) / 4.0).norm(), 1e-14);
  auto r = estimate_tsallis(o, 3.0, 4, 0.05, analytic(), std::nullopt, kTestFloors);
  // (tr ρ³ − 1)/(1 − 3) with tr ρ³ = 4 · (1/4)³ = 1/16.
  EXPECT_NEAR(r.estimate, 0.46875, 0.05);
  RealVector bad(3);
  bad << 0.5, 0.5, 0.5;
  EXPECT_THROW(distribution_to_purified_oracle(bad), ValidationError);
}

TEST(Estimation, AdversarialModeStaysWithinBound) {
  Matrix rho = ginibre_state(4, 2, 8);
  AmplitudeEstimatorConfig cfg;
  cfg.mode = AeMode::Adversarial;
  cfg.seed = 4;
  auto r = estimate_trace_power(oracle_of(rho), 2.0, 2, 0.1, cfg, kTestFloors);
  EXPECT_NEAR(r.estimate, exact_quantity(Quantity::TracePower, 2.0, rho), 0.1);
  EXPECT_NE(r.estimate, estimate_trace_power(oracle_of(rho), 2.0, 2, 0.1, analytic(), kTestFloors)
                            .estimate);
}

TEST(Estimation, SampledModeRecordsMedianRuns) {
  Matrix rho = ginibre_state(4, 2, 9);
  AmplitudeEstimatorConfig cfg;
  cfg.mode = AeMode::Sampled;
  cfg.seed = 11;
  auto r = estimate_trace_power(oracle_of(rho), 3.0, 2, 0.2, cfg, kTestFloors);
  EXPECT_EQ(r.runs, 7);
  EXPECT_NEAR(r.success_probability_note, median_success_probability(3), 1e-15);
}

TEST(Estimation, DispatcherRequiresSigma) {
  Matrix rho = ginibre_state(2, 1, 1);
  EstimateRequest q;
  q.quantity = Quantity::Fidelity;
  q.alpha = 0.5;
  EXPECT_THROW(estimate(q, oracle_of(rho), std::nullopt, analytic(), kTestFloors),
               ValidationError);
}

TEST(Estimation, ReportsCarryBothSchedules) {
  auto r = estimate_von_neumann(oracle_of(ginibre_state(8, 4, 2)), 4, 0.1, analytic(), kTestFloors);
  EXPECT_FALSE(r.parameters_theory.empty());
  EXPECT_FALSE(r.parameters_used.empty());
  EXPECT_LE(r.bound_theory, 0.1 * (1 + 1e-12));
  EXPECT_EQ(r.bound_certified, r.bound_realized <= 0.1 * (1 + 1e-12));
  EXPECT_GT(r.planned.total(), 0.0);
}
