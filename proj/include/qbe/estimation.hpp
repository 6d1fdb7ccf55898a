/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Top-level estimators.
//
// Every estimator follows the same shape: pick a schedule, prepare a
// subnormalized density operator whose trace is a rescaled version of the
// quantity, run trace estimation on it and undo the rescale. The report keeps
// the theory schedule and the realized one, the composite bound evaluated at
// both, and two ledgers: the realized cost tree and the planned (formula)
// counts.

#include "qbe/amplitude.hpp"
#include "qbe/encodings.hpp"
#include "qbe/ledger.hpp"
#include "qbe/numerics.hpp"
#include "qbe/schedules.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qbe {

struct EstimateReport {
  Quantity quantity = Quantity::VonNeumann;
  double alpha = 0.0;
  std::string case_label;
  double estimate = 0.0;
  double target_epsilon = 0.0;
  std::optional<double> true_value;

  Params parameters_used;   // realized schedule
  Params parameters_theory; // schedule before floors
  double upper_bound = 0.0; // B
  double scale = 1.0;
  double epsilon_ae = 0.0;
  double bound_theory = 0.0;
  double bound_realized = 0.0;
  bool bound_certified = false;
  int rounds = 0;
  bool clamped = false;

  ResourceLedger ledger; // realized cost tree
  PlannedCost planned;   // formula degrees at the theory schedule
  std::int64_t repetitions = 0;
  int runs = 1;
  double amplitude = 0.0; // exact amplitude of the prepared state

  AeMode mode = AeMode::Analytic;
  double success_probability_note = 1.0;
  std::vector<std::string> notes;
  CostTree cost;

  double error() const { return true_value ? std::abs(estimate - *true_value) : 0.0; }
};

EstimateReport estimate_von_neumann(const PurifiedAccessOracle &rho, int rank_bound,
                                    double epsilon, const AmplitudeEstimatorConfig &config,
                                    const Floors &floors = Floors::from_env());

/// (1−ε)rank_δ(ρ) − ε' ≤ r̃ ≤ (1+ε)rank(ρ) + ε'.
EstimateReport estimate_rank(const PurifiedAccessOracle &rho, double delta, double epsilon,
                             double epsilon_prime, const AmplitudeEstimatorConfig &config,
                             const Floors &floors = Floors::from_env());

/// Exact rank under Π/κ ≤ ρ. Throws ValidationError if the spectrum violates
/// the assumption.
int estimate_exact_rank(const PurifiedAccessOracle &rho, double kappa,
                        const AmplitudeEstimatorConfig &config,
                        const Floors &floors = Floors::from_env());

EstimateReport estimate_max_entropy(const PurifiedAccessOracle &rho, double delta, double epsilon,
                                    const AmplitudeEstimatorConfig &config,
                                    std::optional<double> kappa = std::nullopt,
                                    const Floors &floors = Floors::from_env());

EstimateReport estimate_trace_power(const PurifiedAccessOracle &rho, double alpha, int rank_bound,
                                    double epsilon, const AmplitudeEstimatorConfig &config,
                                    const Floors &floors = Floors::from_env());

/// α = 0 routes to max entropy and needs κ.
EstimateReport estimate_renyi(const PurifiedAccessOracle &rho, double alpha, int rank_bound,
                              double epsilon, const AmplitudeEstimatorConfig &config,
                              std::optional<double> kappa = std::nullopt,
                              const Floors &floors = Floors::from_env());

/// α = 0 routes to rank − 1 and needs κ.
EstimateReport estimate_tsallis(const PurifiedAccessOracle &rho, double alpha, int rank_bound,
                                double epsilon, const AmplitudeEstimatorConfig &config,
                                std::optional<double> kappa = std::nullopt,
                                const Floors &floors = Floors::from_env());

EstimateReport estimate_trace_distance(const PurifiedAccessOracle &rho,
                                       const PurifiedAccessOracle &sigma, double alpha,
                                       int rank_bound, double epsilon,
                                       const AmplitudeEstimatorConfig &config,
                                       const Floors &floors = Floors::from_env());

EstimateReport estimate_fidelity(const PurifiedAccessOracle &rho,
                                 const PurifiedAccessOracle &sigma, double alpha, int rank_bound,
                                 double epsilon, const AmplitudeEstimatorConfig &config,
                                 const Floors &floors = Floors::from_env());

/// Σ √p_i |i⟩|i⟩: n system qubits, n purifying qubits.
PurifiedAccessOracle distribution_to_purified_oracle(const RealVector &p,
                                                     const std::string &oracle = "rho");

/// Dispatch by quantity (σ required for trace distance and fidelity; κ for
/// max entropy and α = 0).
struct EstimateRequest {
  Quantity quantity = Quantity::VonNeumann;
  double alpha = 1.0;
  double epsilon = 0.1;
  int rank_bound = 1;
  std::optional<double> kappa;
  double delta = 0.1; // rank / max entropy
};

EstimateReport estimate(const EstimateRequest &request, const PurifiedAccessOracle &rho,
                        const std::optional<PurifiedAccessOracle> &sigma,
                        const AmplitudeEstimatorConfig &config,
                        const Floors &floors = Floors::from_env());

} // namespace qbe
