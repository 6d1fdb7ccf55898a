/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Certified Chebyshev-basis polynomial approximations.
//
// Every family builds an analytic (erf-windowed) surrogate of its target,
// interpolates it at Chebyshev nodes (DCT-II), imposes the parity, and
// certifies the result on dense grids. Degree selection starts from the
// asymptotic formula, doubles until certification passes, then truncates the
// Chebyshev series back to the smallest length that still certifies.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qbe {

enum class Parity { Even, Odd, None };
std::string to_string(Parity p);

/// One certification requirement on [lo, hi] (and its mirror when `mirror`).
struct Band {
  enum class Kind { Approximate, Range };
  Kind kind = Kind::Approximate;
  double lo = 0.0, hi = 0.0;
  double ymin = 0.0, ymax = 0.0; // Range only
  bool mirror = false;
};

/// Measured outcome of one band on its grid.
struct BandReport {
  Band band;
  double worst = 0.0; // max |P − f| (Approximate) or max violation (Range)
  bool pass = false;
};

struct TargetDescriptor {
  std::string name;
  std::map<std::string, double> parameters;
  std::function<double(double)> f;
};

class CertifiedPolynomial {
public:
  std::vector<double> chebyshev_coefficients;
  Parity parity = Parity::None;
  TargetDescriptor target;
  double interval_lo = 0.0, interval_hi = 0.0; // certified interval of the target
  double requested_error = 0.0;
  double certified_error = 0.0; // measured grid max |P − f| over approximation bands
  double global_bound = 0.0;    // measured grid max |P| over [−1, 1]
  double allowed_bound = 1.0;   // contract on global_bound
  double formula_degree = 0.0;  // asymptotic degree formula (constant 1)
  std::vector<BandReport> bands;

  int degree() const;
  double operator()(double x) const;
  std::vector<double> evaluate(const std::vector<double> &xs) const;

  /// Re-run every grid check; false if any invariant fails.
  bool verify() const;
};

// Grid constants of the certification contract.
inline constexpr int kGridPoints = 10001;
inline constexpr int kChebyshevExtrema = 64;
inline constexpr double kCertRelTol = 1e-6;
inline constexpr double kBoundSlack = 1e-9;
/// Rounding allowance on range-band limits.
inline constexpr double kRangeSlack = 1e-14;
inline constexpr double kParityZeroTol = 1e-12;

/// Degree cap for the search; `QBE_DEGREE_CAP` overrides the default.
int degree_cap();

/// 10,001 uniform points on [lo, hi] plus the 64 extrema of T_63 inside it.
std::vector<double> certification_grid(double lo, double hi, int points = kGridPoints);

/// Chebyshev interpolant (first-kind nodes) of f with `degree + 1` coefficients.
/// With a parity, f is sampled on the non-negative nodes only and mirrored.
std::vector<double> chebyshev_interpolate(const std::function<double(double)> &f, int degree,
                                          Parity symmetry = Parity::None);

/// Convert Chebyshev coefficients to monomial ones (exact for small degree).
std::vector<double> chebyshev_to_monomial(const std::vector<double> &c);
/// Σ m_k x^k with Kahan–Neumaier compensated summation.
double monomial_eval_compensated(const std::vector<double> &m, double x);

/// erfc⁻¹(y) for y ∈ (0, 1].
double erfc_inv(double y);

// ---------------------------------------------------------------------------
// Families

using PolyPtr = std::shared_ptr<const CertifiedPolynomial>;

/// P ≈ ½ x^c on [δ, 1], even.
PolyPtr approx_positive_power(double c, double delta, double epsilon);
/// P ≈ (δ^c/2) x^{−c} on [δ, 1], even.
PolyPtr approx_negative_power(double c, double delta, double epsilon);
/// Even P ∈ [1−ε, 1] on |x| ≤ t−δ, P ∈ [0, ε] on t+δ ≤ |x| ≤ 1.
PolyPtr approx_threshold(double t, double delta, double epsilon);
/// Even R ∈ [1−ε, 1] on |x| ≥ 2δ, R ∈ [0, ε] on |x| ≤ δ.
PolyPtr approx_support_indicator(double delta, double epsilon);
/// Even R ∈ [1−ε, 1] on |x| ≤ 1−2δ, R ∈ [0, ε] on |x| ≥ 1−δ.
PolyPtr approx_interior_indicator(double delta, double epsilon);

/// Function given by its Taylor series around x0 (coefficients to any order).
struct AnalyticFunction {
  std::string name;
  std::map<std::string, double> parameters;
  std::function<double(double)> f;
  /// Coefficients a_0..a_K of Σ a_k (x − x0)^k, each multiplied by scale^k
  /// (so callers can work in a rescaled variable without overflow).
  std::function<std::vector<double>(double x0, int K, double scale)> taylor;
};

AnalyticFunction analytic_constant(double value);
/// a·exp(x)
AnalyticFunction analytic_exp(double a);
/// √(−ln x) / (2√(ln(1/δ'))) expanded around x0 = 1/2.
AnalyticFunction analytic_sqrt_neglog(double delta_prime);

/// Σ_k |a_k| ρ^k over the first K Taylor coefficients.
double taylor_coefficient_bound(const AnalyticFunction &f, double x0, double rho, int K);

/// |P − f| ≤ ε on [x0−r, x0+r], |P| ≤ ε + B on [−1, 1], |P| ≤ ε outside
/// [x0−r−δ/2, x0+r+δ/2].
PolyPtr approx_taylor(const AnalyticFunction &f, double x0, double r, double delta, double bound,
                      double epsilon, bool even = false);

/// P ≈ √(−ln x)/(2√(ln(1/δ'))) on [δ', 1−δ'], |P| ≤ 1, even.
PolyPtr approx_sqrt_neglog(double delta_prime, double epsilon);

/// Exact polynomial wrapped as certified against itself (used for x, 1, …).
PolyPtr exact_polynomial(std::vector<double> chebyshev_coefficients, Parity parity,
                         std::string name);

/// Family name → constructor used by the CLI. Parameters: c, delta, epsilon, t.
PolyPtr approx_family(const std::string &family, const std::map<std::string, double> &params);

/// Asymptotic degree of a family with constant 1, e.g. (1/δ)·ln(1/ε).
double formula_degree(const std::string &family, const std::map<std::string, double> &params);

} // namespace qbe
