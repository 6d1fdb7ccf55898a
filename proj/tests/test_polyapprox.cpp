/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/kernels.hpp"
#include "qbe/numerics.hpp"
#include "qbe/polyapprox.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qbe;

TEST(Chebyshev, InterpolationIsExactForPolynomials) {
  auto c = chebyshev_interpolate([](double x) { return 4 * x * x * x - 3 * x; }, 5); // T_3
  ASSERT_EQ(c.size(), 6u);
  for (std::size_t k = 0; k < c.size(); ++k)
    EXPECT_NEAR(c[k], k == 3 ? 1.0 : 0.0, 1e-14);
}

TEST(Chebyshev, MonomialConversionAgreesWithClenshaw) {
  std::vector<double> c{0.3, -0.2, 0.5, 0.1, -0.05};
  auto m = chebyshev_to_monomial(c);
  auto p = exact_polynomial(c, Parity::None, "test");
  for (double x : {-1.0, -0.3, 0.0, 0.42, 1.0})
    EXPECT_NEAR(monomial_eval_compensated(m, x), (*p)(x), 1e-14);
}

TEST(ErfcInv, InvertsErfc) {
  for (double y : {1e-12, 1e-8, 1e-3, 0.2, 0.9, 1.0})
    EXPECT_NEAR(std::erfc(erfc_inv(y)), y, 1e-12 * y);
  EXPECT_THROW(erfc_inv(1.5), ValidationError);
}

TEST(Taylor, CoefficientBoundOfExp) {
  // Σ_{k<K} ρ^k/k! → e^ρ for exp around 0.
  auto f = analytic_exp(1.0);
  EXPECT_NEAR(taylor_coefficient_bound(f, 0.0, 0.5, 40), std::exp(0.5), 1e-12);
}

TEST(Families, NegativePowerMeetsItsContract) {
  auto p = approx_negative_power(0.5, 0.1, 0.01);
  EXPECT_LE(p->certified_error, 0.01);
  EXPECT_LE(p->global_bound, p->allowed_bound + kBoundSlack);
  EXPECT_EQ(p->parity, Parity::Even);
  EXPECT_TRUE(p->verify());
  // Independent pointwise spot-checks: P ≈ (δ^c/2) x^{−c} on [δ, 1].
  for (double x : {0.1, 0.2, 0.5, 0.9, 1.0})
    EXPECT_NEAR((*p)(x), 0.5 * std::sqrt(0.1) / std::sqrt(x), 0.01);
  EXPECT_NEAR((*p)(-0.3), (*p)(0.3), 1e-12);
}

TEST(Families, PositivePowerMeetsItsContract) {
  auto p = approx_positive_power(0.5, 0.05, 1e-3);
  EXPECT_TRUE(p->verify());
  for (double x : {0.05, 0.3, 1.0})
    EXPECT_NEAR((*p)(x), 0.5 * std::sqrt(x), 1e-3);
  EXPECT_LE(p->global_bound, p->allowed_bound + kBoundSlack);
}

TEST(Families, IndicatorsSeparateBands) {
  auto s = approx_support_indicator(0.1, 0.01);
  EXPECT_TRUE(s->verify());
  EXPECT_LE((*s)(0.05), 0.01 + 1e-12);
  EXPECT_GE((*s)(0.25), 0.99 - 1e-12);
  auto i = approx_interior_indicator(0.1, 0.01);
  EXPECT_TRUE(i->verify());
  EXPECT_GE((*i)(0.5), 0.99 - 1e-12);
  EXPECT_LE((*i)(0.95), 0.01 + 1e-12);
  auto t = approx_threshold(0.5, 0.1, 0.01);
  EXPECT_TRUE(t->verify());
  EXPECT_GE((*t)(0.3), 0.99 - 1e-12);
  EXPECT_LE((*t)(0.7), 0.01 + 1e-12);
}

TEST(Families, ThresholdWithInvalidBandThrows) {
  EXPECT_THROW(approx_threshold(0.05, 0.1, 0.01), ValidationError);
  EXPECT_THROW(approx_threshold(0.95, 0.1, 0.01), ValidationError);
  EXPECT_THROW(approx_negative_power(0.5, 0.0, 0.01), ValidationError);
  EXPECT_THROW(approx_positive_power(0.5, 0.1, 0.0), ValidationError);
}

TEST(Families, SqrtNeglogDegreeWithin64xOfFormula) {
  auto p = approx_sqrt_neglog(0.1, 0.01);
  EXPECT_TRUE(p->verify());
  const double formula = (1.0 / 0.1) * std::log(1.0 / (0.1 * 0.01));
  EXPECT_LE(p->degree(), 64.0 * formula);
  EXPECT_LE(p->global_bound, 1.0 + kBoundSlack);
  const double norm = 2.0 * std::sqrt(std::log(10.0));
  for (double x : {0.1, 0.3, 0.7, 0.9})
    EXPECT_NEAR((*p)(x), std::sqrt(-std::log(x)) / norm, 0.01);
}

TEST(Families, DispatchByName) {
  auto p = approx_family("neg-power", {{"c", 0.5}, {"delta", 0.1}, {"epsilon", 0.01}});
  EXPECT_LE(p->certified_error, 0.01);
  EXPECT_THROW(approx_family("neg-power", {{"c", 0.5}}), ValidationError);
  EXPECT_THROW(approx_family("bessel", {}), ValidationError);
  EXPECT_NEAR(formula_degree("pos-power", {{"delta", 0.1}, {"epsilon", 0.01}}),
              10.0 * std::log(100.0), 1e-12);
}

TEST(Families, EvaluateMatchesPointwise) {
  auto p = approx_support_indicator(0.05, 1e-3);
  auto xs = certification_grid(-1.0, 1.0, 101);
  auto ys = p->evaluate(xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    EXPECT_NEAR(ys[i], (*p)(xs[i]), 1e-13);
}

TEST(Families, DegreeCapIsEnforced) {
  EXPECT_GT(degree_cap(), 0);
}

TEST(Kernels, SerialAndOmpAgree) {
  std::vector<double> c(2001), xs = certification_grid(-1.0, 1.0, 5001), a, b;
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = std::cos(0.37 * k) / (1.0 + k);
  kernels::clenshaw_serial(c, xs, a);
  kernels::clenshaw_omp(c, xs, b);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(a[i], b[i]);
  auto f = [](double x) { return std::exp(-x * x) * std::sin(9.0 * x); };
  kernels::tabulate_serial(f, xs, a);
  kernels::tabulate_omp(f, xs, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(a[i], b[i]);
}

TEST(Chebyshev, SymmetricSamplingMatchesFullSampling) {
  auto even = [](double x) { return std::exp(-40.0 * x * x); };
  auto odd = [](double x) { return std::tanh(30.0 * x); };
  for (int d : {64, 65, 400, 401}) {
    auto full = chebyshev_interpolate(even, d);
    auto half = chebyshev_interpolate(even, d, Parity::Even);
    for (std::size_t k = 0; k < full.size(); ++k)
      EXPECT_NEAR(half[k], k % 2 ? 0.0 : full[k], 1e-14) << d << " " << k;
    full = chebyshev_interpolate(odd, d);
    half = chebyshev_interpolate(odd, d, Parity::Odd);
    for (std::size_t k = 0; k < full.size(); ++k)
      EXPECT_NEAR(half[k], k % 2 ? full[k] : 0.0, 1e-14) << d << " " << k;
  }
}

TEST(Chebyshev, EvenSeriesEvaluationMatchesClenshaw) {
  // Built polynomials store exact zeros in the odd slots; evaluate() then
  // runs a half-length series in 2x² − 1.
  auto p = approx_positive_power(0.5, 0.1, 1e-3);
  auto xs = certification_grid(-1.0, 1.0, 2001);
  auto fast = p->evaluate(xs);
  auto ref = kernels::clenshaw(p->chebyshev_coefficients, xs, kernels::Exec::Serial);
  for (std::size_t i = 0; i < xs.size(); ++i)
    EXPECT_NEAR(fast[i], ref[i], 1e-13);
}
