/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Parameter schedules of the estimators.
//
// Each schedule has the asymptotic form used in the corresponding proof (for
// example δ₁ ∝ (ε/r)^{1/α}) with constants chosen from an explicit,
// constant-tracked version of the proof's final error bound so that every term
// receives a fixed share of ε. If the bound still exceeds ε, all internal
// tolerances are halved, up to six rounds.
//
// The theory schedule feeds the planned ledger (formula degrees, constant 1).
// The realized schedule clamps polynomial tolerances at floors so that
// desk-scale runs stay tractable; the bound is then re-evaluated and reported
// as certified only if it still meets ε.

#include <map>
#include <string>
#include <vector>

namespace qbe {

using Params = std::map<std::string, double>;

struct Floors {
  double delta = 1e-3;
  double epsilon = 1e-4;
  /// Defaults overridden by QBE_DELTA_FLOOR / QBE_EPSILON_FLOOR.
  static Floors from_env();
};

/// Query totals predicted from the formula degrees of the theory schedule.
struct PlannedCost {
  double queries_rho = 0.0;
  double queries_sigma = 0.0;
  double controlled = 0.0;
  double repetitions = 0.0; // trace-estimation M
  double per_prep_rho = 0.0, per_prep_sigma = 0.0;
  // Total with subroutine costs multiplied instead of added where the two
  // differ (trace distance); equal to total() elsewhere.
  double multiplicative_total = 0.0;
  double total() const { return queries_rho + queries_sigma; }
};

struct Plan {
  std::string case_label;
  Params theory, realized;
  double bound_theory = 0.0, bound_realized = 0.0;
  double upper_bound = 1.0;        // B for trace estimation (realized)
  double scale = 1.0;              // output rescale (realized)
  double epsilon_ae = 0.0;         // trace-estimation tolerance
  int rounds = 0;
  bool clamped = false;
  PlannedCost planned;
  bool certified(double epsilon) const { return bound_realized <= epsilon * (1.0 + 1e-12); }
};

/// Nominal global bound of the scaled negative-power and positive-power
/// polynomials used inside the bounds (the constructions stay below it).
inline constexpr double kNominalPowerBound = 0.55;
inline constexpr int kMaxTighteningRounds = 6;

Plan plan_von_neumann(int rank, double epsilon, const Floors &floors = Floors::from_env());
Plan plan_trace_power(double alpha, int rank, double epsilon,
                      const Floors &floors = Floors::from_env());
Plan plan_trace_distance(double alpha, int rank, double epsilon,
                         const Floors &floors = Floors::from_env());
Plan plan_fidelity(double alpha, int rank, double epsilon,
                   const Floors &floors = Floors::from_env());
/// Rank estimation with (1 ± ε) multiplicative and ε' additive error on n qubits.
Plan plan_rank(double delta, double epsilon, double epsilon_prime,
               const Floors &floors = Floors::from_env());

/// Planned cost of a top-level estimator at its theory schedule, including the
/// ε rescaling of Rényi and Tsallis entropies. Rank and max entropy use δ = 0.1.
PlannedCost planned_cost(const std::string &quantity, double alpha, int rank, double epsilon);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

/// Block error of the scale-2 positive-power encoding (per unit scale):
/// max over the three eigenvalue regions of the case bounds.
double positive_power_block_error(double c, double delta, double epsilon);

/// Operator-norm error of the positive_power_density output (unscaled).
double positive_power_density_error(double c, double delta, double epsilon);

} // namespace qbe
