/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/encodings.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qbe;

namespace {

PurifiedAccessOracle oracle_of(const Matrix &m, const std::string &name = "rho") {
  return purification_of(SubnormalizedDensityOperator(m), name);
}

} // namespace

TEST(SubnormalizedDensityOperator, Validates) {
  EXPECT_NO_THROW(SubnormalizedDensityOperator(Matrix::Identity(2, 2) * 0.5));
  EXPECT_THROW(SubnormalizedDensityOperator(Matrix::Identity(2, 2)), ValidationError);
  EXPECT_THROW(SubnormalizedDensityOperator(Matrix::Identity(3, 3) / 3.0), ValidationError);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 0.6;
  neg(1, 1) = -0.1;
  EXPECT_THROW(SubnormalizedDensityOperator{neg}, ValidationError);
}

TEST(Purification, ReducedStateIsTheInput) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    Matrix rho = ginibre_state(4, 1 + static_cast<Eigen::Index>(s % 4), s) * 0.8;
    auto o = oracle_of(rho);
    EXPECT_LT((o.encoded() - rho).norm(), 1e-12);
    EXPECT_NEAR(o.amplitude(), 0.8, 1e-12);
    EXPECT_LT(unitarity_defect(o.unitary()), 1e-12);
    EXPECT_DOUBLE_EQ(o.cost()->total().queries_to("rho"), 1.0);
  }
}

TEST(Purification, CompactedKeepsEncodedOperatorAndCost) {
  Matrix rho = ginibre_state(4, 2, 9);
  auto o = embed(oracle_of(rho), 1);
  auto c = o.compacted();
  EXPECT_LT((c.encoded() - o.encoded()).norm(), 1e-12);
  EXPECT_EQ(c.declared_block_ancillas(), o.declared_block_ancillas());
  EXPECT_DOUBLE_EQ(c.cost()->total().total_queries(), o.cost()->total().total_queries());
}

TEST(Dilation, IsUnitaryWithTheContractionInTheCorner) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    Matrix m = random_contraction(4, 4, rng);
    auto u = dilate(m);
    EXPECT_LT(unitarity_defect(u.unitary()), 1e-9);
    EXPECT_LT((u.block() - m).norm(), 1e-12);
  }
  EXPECT_THROW(dilate(Matrix::Identity(2, 2) * 2.0), ValidationError);
}

TEST(BlockEncodeDensity, CompactAndLiteralAgree) {
  Matrix rho = ginibre_state(2, 2, 4);
  auto o = oracle_of(rho);
  auto c = block_encode_density(o, DensityBlockVariant::Compact);
  auto l = block_encode_density(o, DensityBlockVariant::Literal);
  EXPECT_LT((c.block() - rho).norm(), 1e-12);
  EXPECT_LT((l.block() - rho).norm(), 1e-12);
  EXPECT_LT(unitarity_defect(l.unitary()), 1e-12);
  EXPECT_EQ(c.declared_ancillas(), l.declared_ancillas());
}

TEST(Evolve, MatchesDirectSandwich) {
  Rng rng(8);
  Matrix rho = ginibre_state(4, 3, 2);
  Matrix b = random_contraction(4, 4, rng);
  auto v = dilate(b);
  auto e = evolve(oracle_of(rho), v);
  EXPECT_LT((e.encoded() - b * rho * b.adjoint()).norm(), 1e-12);
  EXPECT_EQ(e.block_ancillas(), 1);
}

TEST(Product, BlockIsTheMatrixProduct) {
  Rng rng(12);
  Matrix a = random_contraction(4, 4, rng), b = random_contraction(4, 4, rng);
  auto p = product(dilate(a), dilate(b));
  EXPECT_LT((p.block() - a * b).norm(), 1e-12);
  EXPECT_LT(unitarity_defect(p.unitary()), 1e-12);
}

TEST(StatePreparationPair, DifferencePairReproducesCoefficients) {
  auto p = StatePreparationPair::difference();
  EXPECT_NO_THROW(p.validate());
  EXPECT_LT(p.defect(), 1e-15);
  Vector y(3);
  y << 0.5, cplx(0, -0.25), -0.25;
  auto q = StatePreparationPair::for_coefficients(y);
  EXPECT_NEAR(q.norm_bound, 1.0, 1e-15);
  EXPECT_LT(q.defect(), 1e-12);
}

TEST(Lcu, DifferenceOfDensityEncodings) {
  Matrix rho = ginibre_state(4, 2, 1), sigma = ginibre_state(4, 2, 2);
  auto u = lcu(StatePreparationPair::difference(),
               {block_encode_density(oracle_of(rho)), block_encode_density(oracle_of(sigma, "sigma"))});
  EXPECT_DOUBLE_EQ(u.scale(), 2.0);
  EXPECT_LT((u.scale() * u.block() - (rho - sigma)).norm(), 1e-12);
  Cost c = u.cost()->total();
  EXPECT_DOUBLE_EQ(c.queries_to("rho"), 1.0);
  EXPECT_DOUBLE_EQ(c.queries_to("sigma"), 1.0);
}

TEST(LinearCombinationDensity, WeightsAndZeroPadding) {
  Matrix rho = ginibre_state(4, 2, 3), sigma = ginibre_state(4, 1, 4);
  RealVector w(2);
  w << 0.3, 0.5; // leftover 0.2 lands on the zero operator
  auto o = linear_combination_density(w, {oracle_of(rho), oracle_of(sigma, "sigma")});
  EXPECT_LT((o.encoded() - (0.3 * rho + 0.5 * sigma)).norm(), 1e-12);
  Cost c = o.cost()->total();
  EXPECT_DOUBLE_EQ(c.queries_to("zero"), 0.0);
  EXPECT_DOUBLE_EQ(c.queries_to("rho") + c.queries_to("sigma"), 2.0);
  RealVector bad(2);
  bad << 0.7, 0.5;
  EXPECT_THROW(linear_combination_density(bad, {oracle_of(rho), oracle_of(sigma)}),
               ValidationError);
}

TEST(Embed, AddsZeroBlock) {
  Matrix rho = ginibre_state(2, 2, 6);
  auto e = embed(oracle_of(rho), 1);
  Matrix expect = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      expect(2 * i, 2 * j) = rho(i, j);
  EXPECT_LT((e.encoded() - expect).norm(), 1e-12);
}
