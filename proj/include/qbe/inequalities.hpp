/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Operator inequalities used by the trace-distance and fidelity analyses,
// returned as (lhs, rhs) pairs, plus seeded random sweeps over them.

#include "qbe/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace qbe {

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds(double tol = 1e-10) const { return lhs <= rhs + tol; }
  double ratio() const { return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0); }
};

/// lhs: tr(|ν|^{α/2}(Π_supp(μ) − Π_supp_δ(μ))|ν|^{α/2}); rhs: 2rδ^{min(α,1)/2}.
/// r is the larger rank of ρ and σ; δ = 0 gives an empty truncation.
InequalityCheck trace_distance_truncation_bound(const Matrix &nu, const Matrix &mu, double alpha,
                                                double delta, int rank);

/// lhs: ‖A^α ψ‖; rhs: ‖Aψ‖^α ‖ψ‖^{1−α}.
InequalityCheck holder_power_norm_check(const Matrix &a, const Vector &psi, double alpha);

/// lhs: |tr A^α − tr B^α|; rhs: 5r‖A − B‖^α with r = max(rank A, rank B).
InequalityCheck weyl_perturbation_bound(const Matrix &a, const Matrix &b, double alpha);

struct SuiteResult {
  std::string name;
  int trials = 0;
  int violations = 0;
  double worst_ratio = 0.0; // max lhs/rhs (0 when every rhs is 0 and lhs is 0)
  bool passed() const { return violations == 0; }
};

/// Suites: "weyl", "truncation", "holder", "sandwich". `delta` < 0 draws δ at
/// random in (0, 0.1] for the truncation suite.
SuiteResult run_suite(const std::string &name, int trials, std::uint64_t seed,
                      double delta = -1.0);

std::vector<std::string> suite_names();

} // namespace qbe
