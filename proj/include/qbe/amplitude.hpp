/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Amplitude and trace estimation.
//
// The estimate is simulated from the exact amplitude p of the realized state:
// ANALYTIC returns p, ADVERSARIAL returns p shifted by the full error bound,
// and SAMPLED draws a phase-estimation outcome m from its exact law and
// returns sin²(πm/M).

#include "qbe/encodings.hpp"

#include <cstdint>
#include <string>

namespace qbe {

enum class AeMode { Analytic, Adversarial, Sampled };
std::string to_string(AeMode m);
AeMode ae_mode_from_string(const std::string &s);

struct AmplitudeEstimatorConfig {
  AeMode mode = AeMode::Analytic;
  std::int64_t M = 0; // repetitions; 0 lets trace_estimate derive it
  std::uint64_t seed = 0;
  int median_k = 3;   // SAMPLED estimators take the median of 2k+1 runs
};

/// 2π√(p(1−p))/M + π²/M².
double ae_error_bound(double p, std::int64_t M);

/// ⌈2π(2√B/ε + 1/√ε)⌉.
std::int64_t trace_estimation_repetitions(double upper_bound, double epsilon);

/// Probability that the median of 2k+1 independent runs, each succeeding with
/// probability ≥ 8/π², succeeds.
double median_success_probability(int k);

struct AmplitudeEstimate {
  double p_estimate = 0.0;
  double error_bound = 0.0;
  double p_exact = 0.0;
  std::int64_t M = 0;
};

/// Single amplitude-estimation run for a known amplitude p.
AmplitudeEstimate amplitude_estimate(double p, std::int64_t M, AeMode mode, std::uint64_t seed);

/// Single run on the amplitude of `oracle` (block ancillas reading 0).
AmplitudeEstimate amplitude_estimate(const PurifiedAccessOracle &oracle,
                                     const AmplitudeEstimatorConfig &config);

struct TraceEstimate {
  double value = 0.0;
  double error_bound = 0.0; // bound of the last run at the true amplitude
  double exact = 0.0;
  std::int64_t M = 0;
  int runs = 1;
  CostTree cost; // runs × M × cost(oracle)
};

/// Estimate tr(A) for A encoded by `oracle`, given tr(A) ≤ upper_bound.
TraceEstimate trace_estimate(const PurifiedAccessOracle &oracle, double upper_bound,
                             double epsilon, const AmplitudeEstimatorConfig &config);

} // namespace qbe
