/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qbe;

namespace {

Matrix diag(std::initializer_list<double> v) {
  RealVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v)
    d(i++) = x;
  return d.cast<cplx>().asDiagonal();
}

Matrix pure(const Vector &psi) { return psi * psi.adjoint() / psi.squaredNorm(); }

} // namespace

TEST(Numerics, HermitianOperatorRejectsNonHermitian) {
  Matrix m(2, 2);
  m << 1, 1, 0, 1;
  EXPECT_THROW(HermitianOperator{m}, ValidationError);
  EXPECT_NO_THROW(HermitianOperator{m + m.adjoint()});
}

TEST(Numerics, SpectralDecompositionDescendingAndReconstructs) {
  Rng rng(3);
  Matrix h = random_hermitian(6, rng);
  auto sd = spectral_decompose(h);
  for (Eigen::Index k = 1; k < sd.eigenvalues.size(); ++k)
    EXPECT_GE(sd.eigenvalues(k - 1), sd.eigenvalues(k));
  EXPECT_LT((sd.reconstruct() - h).norm(), 1e-12);
}

TEST(Numerics, MatrixFunctionClampsAtZeroLowerBound) {
  Matrix m = diag({0.5, -1e-14});
  Matrix s = matrix_function(m, ScalarFunction{[](double x) { return std::sqrt(x); }, 0.0, 1.0});
  EXPECT_NEAR(s(0, 0).real(), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(s(1, 1).real(), 0.0);
  EXPECT_THROW(matrix_function(diag({0.5, -1e-3}),
                               ScalarFunction{[](double x) { return std::sqrt(x); }, 0.0, 1.0}),
               ValidationError);
}

TEST(Numerics, PartialTraceOfBellStateIsMaximallyMixed) {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  Matrix r = partial_trace(bell * bell.adjoint(), 2, 2);
  EXPECT_LT((r - Matrix::Identity(2, 2) / 2.0).norm(), 1e-15);
  Matrix l = partial_trace_first(bell * bell.adjoint(), 2, 2);
  EXPECT_LT((l - Matrix::Identity(2, 2) / 2.0).norm(), 1e-15);
}

TEST(Numerics, PartialTraceOfProductKeepsFactor) {
  Matrix a = ginibre_state(2, 2, 1), b = ginibre_state(4, 2, 2);
  EXPECT_LT((partial_trace(kron(a, b), 2, 4) - a).norm(), 1e-13);
  EXPECT_LT((partial_trace_first(kron(a, b), 2, 4) - b).norm(), 1e-13);
}

TEST(Numerics, DeltaRankCountsEigenvaluesAboveThreshold) {
  Matrix m = diag({0.5, 0.3, 0.15, 0.05});
  EXPECT_EQ(delta_rank(m, 0.0), 4);
  EXPECT_EQ(delta_rank(m, 0.1), 3);
  EXPECT_EQ(delta_rank(m, 0.3), 1);
  EXPECT_EQ(delta_rank(m, 0.6), 0);
}

// Closed forms on diag(3/4, 1/4).
TEST(Numerics, ExactQuantitiesOnDiag31) {
  Matrix rho = diag({0.75, 0.25});
  const double vn = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  EXPECT_NEAR(exact_quantity(Quantity::VonNeumann, 1.0, rho), vn, 1e-14);
  EXPECT_NEAR(exact_quantity(Quantity::TracePower, 2.0, rho), 0.625, 1e-15);
  EXPECT_NEAR(exact_quantity(Quantity::Renyi, 2.0, rho), -std::log(0.625), 1e-14);
  EXPECT_NEAR(exact_quantity(Quantity::Tsallis, 2.0, rho), (1.0 - 0.625), 1e-14);
  EXPECT_NEAR(exact_quantity(Quantity::Renyi, 0.5, rho),
              2.0 * std::log(std::sqrt(0.75) + 0.5), 1e-14);
  EXPECT_NEAR(exact_quantity(Quantity::MaxEntropy, 0.0, rho), std::log(2.0), 1e-14);
  EXPECT_NEAR(exact_quantity(Quantity::Rank, 0.0, rho), 2.0, 0.0);
  // Rényi α → 1 approaches von Neumann.
  EXPECT_NEAR(exact_quantity(Quantity::Renyi, 1.0 + 1e-7, rho), vn, 1e-6);
}

TEST(Numerics, ExactQuantitiesOnMaximallyMixed) {
  Matrix rho = Matrix::Identity(4, 4) / 4.0;
  EXPECT_NEAR(exact_quantity(Quantity::VonNeumann, 1.0, rho), std::log(4.0), 1e-14);
  for (double a : {0.5, 2.0, 3.0})
    EXPECT_NEAR(exact_quantity(Quantity::Renyi, a, rho), std::log(4.0), 1e-13);
}

TEST(Numerics, TwoStateQuantities) {
  Vector e0 = Vector::Unit(2, 0), e1 = Vector::Unit(2, 1);
  Matrix r0 = pure(e0), r1 = pure(e1);
  EXPECT_NEAR(exact_quantity(Quantity::TraceDistance, 1.0, r0, r1), 1.0, 1e-14);
  EXPECT_NEAR(exact_quantity(Quantity::TraceDistance, 1.0, r0, r0), 0.0, 1e-14);
  EXPECT_NEAR(exact_quantity(Quantity::Fidelity, 0.5, r0, r1), 0.0, 1e-7);
  EXPECT_NEAR(exact_quantity(Quantity::Fidelity, 0.5, r0, r0), 1.0, 1e-7);
  // Commuting states: F_{1/2} = Σ √(p_i q_i).
  Matrix p = diag({0.75, 0.25}), q = diag({0.5, 0.5});
  EXPECT_NEAR(exact_quantity(Quantity::Fidelity, 0.5, p, q),
              std::sqrt(0.375) + std::sqrt(0.125), 1e-12);
  // α-trace distance of commuting states: Σ |(p_i − q_i)/2|^α.
  EXPECT_NEAR(exact_quantity(Quantity::TraceDistance, 2.0, p, q), 2 * 0.125 * 0.125, 1e-14);
  EXPECT_THROW(exact_quantity(Quantity::Fidelity, 0.5, p), ValidationError);
}

// Cross-oracle: spectral path vs raw products for integer powers.
TEST(Numerics, IntegerTracePowerCrossOracle) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Matrix rho = ginibre_state(8, 1 + static_cast<Eigen::Index>(s % 4), s);
    for (int k : {2, 3, 4})
      EXPECT_NEAR(exact_quantity(Quantity::TracePower, k, rho), trace_power_raw(rho, k), 1e-13);
  }
}

TEST(Numerics, GinibreStateHasRequestedRankAndUnitTrace) {
  Matrix rho = ginibre_state(8, 3, 1);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
  EXPECT_TRUE(is_psd(rho));
  EXPECT_EQ(delta_rank(rho, 1e-10), 3);
  EXPECT_EQ((ginibre_state(8, 3, 1) - rho).norm(), 0.0);
  EXPECT_EQ(delta_rank(ginibre_state(2, 1, 7), 1e-10), 1);
  EXPECT_THROW(ginibre_state(2, 3, 0), ValidationError);
}

TEST(Numerics, DerivedSeedsAreDistinctAndStable) {
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
  EXPECT_NE(derive_seed(5, 3), derive_seed(5, 4));
  EXPECT_NE(derive_seed(5, 3), derive_seed(6, 3));
}

TEST(Numerics, RandomContractionHasUnitNormBound) {
  Rng rng(11);
  for (int t = 0; t < 10; ++t)
    EXPECT_LE(op_norm(random_contraction(4, 3, rng)), 1.0 + 1e-12);
  Matrix u = haar_unitary(5, rng);
  EXPECT_LT((u.adjoint() * u - Matrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(Numerics, DimensionCap) {
  EXPECT_GE(dimension_cap(), 16u);
  EXPECT_THROW(check_dimension(static_cast<Eigen::Index>(dimension_cap()) * 2, "x"),
               ValidationError);
}

TEST(Numerics, QuantityNamesRoundTrip) {
  for (Quantity q : {Quantity::VonNeumann, Quantity::Renyi, Quantity::Tsallis,
                     Quantity::TracePower, Quantity::TraceDistance, Quantity::Fidelity,
                     Quantity::MaxEntropy, Quantity::Rank})
    EXPECT_EQ(quantity_from_string(to_string(q)), q);
  EXPECT_THROW(quantity_from_string("entropy"), ValidationError);
}
