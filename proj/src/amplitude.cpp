/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/amplitude.hpp"

#include "qbe/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qbe {

std::string to_string(AeMode m) {
  switch (m) {
  case AeMode::Analytic:
    return "analytic";
  case AeMode::Adversarial:
    return "adversarial";
  case AeMode::Sampled:
    return "sampled";
  }
  return "?";
}

AeMode ae_mode_from_string(const std::string &s) {
  if (s == "analytic")
    return AeMode::Analytic;
  if (s == "adversarial" || s == "bounded-adversarial")
    return AeMode::Adversarial;
  if (s == "sampled")
    return AeMode::Sampled;
  throw ValidationError("unknown amplitude-estimation mode '" + s + "'");
}

double ae_error_bound(double p, std::int64_t M) {
  const double pi = std::numbers::pi, m = static_cast<double>(M);
  return 2.0 * pi * std::sqrt(std::max(p * (1.0 - p), 0.0)) / m + pi * pi / (m * m);
}

std::int64_t trace_estimation_repetitions(double upper_bound, double epsilon) {
  if (!(upper_bound >= 0.0))
    throw ValidationError("trace estimation: upper bound must be non-negative");
  if (!(epsilon > 0.0))
    throw ValidationError("trace estimation: epsilon must be positive");
  double m = std::ceil(2.0 * std::numbers::pi *
                       (2.0 * std::sqrt(upper_bound) / epsilon + 1.0 / std::sqrt(epsilon)));
  if (m > 9.0e18)
    throw BudgetError("trace estimation: repetition count overflows");
  return static_cast<std::int64_t>(m);
}

double median_success_probability(int k) {
  // The median fails only if at least k+1 of the 2k+1 runs fail.
  const double q = 8.0 / (std::numbers::pi * std::numbers::pi);
  const int n = 2 * k + 1;
  double ok = 0.0;
  for (int j = k + 1; j <= n; ++j)
    ok += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0)) *
          std::pow(q, j) * std::pow(1.0 - q, n - j);
  return ok;
}

AmplitudeEstimate amplitude_estimate(double p, std::int64_t M, AeMode mode, std::uint64_t seed) {
  if (M < 1)
    throw ValidationError("amplitude estimation: M must be at least 1");
  if (!(p >= -1e-12 && p <= 1.0 + 1e-12))
    throw ValidationError("amplitude estimation: amplitude outside [0, 1]");
  p = std::clamp(p, 0.0, 1.0);
  AmplitudeEstimate out;
  out.p_exact = p;
  out.M = M;
  out.error_bound = ae_error_bound(p, M);
  switch (mode) {
  case AeMode::Analytic:
    out.p_estimate = p;
    break;
  case AeMode::Adversarial: {
    // p ∈ {0, 1} makes the outcome law a point mass, so no shift is possible.
    if (p * (1.0 - p) == 0.0) {
      out.p_estimate = p;
      break;
    }
    double sign = (derive_seed(seed, 0) & 1u) ? 1.0 : -1.0;
    out.p_estimate = std::clamp(p + sign * out.error_bound, 0.0, 1.0);
    break;
  }
  case AeMode::Sampled:
    out.p_estimate = kernels::ae_trials(p, M, seed, 1, kernels::Exec::Serial)[0];
    break;
  }
  return out;
}

AmplitudeEstimate amplitude_estimate(const PurifiedAccessOracle &oracle,
                                     const AmplitudeEstimatorConfig &config) {
  std::int64_t M = config.M > 0 ? config.M : 1;
  return amplitude_estimate(oracle.amplitude(), M, config.mode, config.seed);
}

TraceEstimate trace_estimate(const PurifiedAccessOracle &oracle, double upper_bound,
                             double epsilon, const AmplitudeEstimatorConfig &config) {
  TraceEstimate out;
  out.M = config.M > 0 ? config.M : trace_estimation_repetitions(upper_bound, epsilon);
  const double p = oracle.amplitude();
  out.exact = p;
  if (config.mode == AeMode::Sampled) {
    if (config.median_k < 0)
      throw ValidationError("trace estimation: median_k must be non-negative");
    out.runs = 2 * config.median_k + 1;
    std::vector<double> vals;
    for (int i = 0; i < out.runs; ++i)
      vals.push_back(amplitude_estimate(p, out.M, AeMode::Sampled,
                                        derive_seed(config.seed, static_cast<std::uint64_t>(i)))
                         .p_estimate);
    std::nth_element(vals.begin(), vals.begin() + config.median_k, vals.end());
    out.value = vals[static_cast<std::size_t>(config.median_k)];
  } else {
    out.value = amplitude_estimate(p, out.M, config.mode, config.seed).p_estimate;
  }
  out.error_bound = ae_error_bound(std::clamp(p, 0.0, 1.0), out.M);
  out.cost = make_cost("trace estimation", Cost{}, {oracle.cost()},
                       static_cast<double>(out.M) * out.runs);
  return out;
}

} // namespace qbe
