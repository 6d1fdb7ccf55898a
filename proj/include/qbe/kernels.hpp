/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Data-parallel hot loops. Each kernel has a serial reference (`_serial`) and
// an OpenMP version (`_omp`); tests assert they agree, the benchmark compares
// their throughput, and library code calls the dispatching wrapper.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace qbe::kernels {

enum class Exec { Serial, Parallel };

/// y[i] = Σ_k c[k] T_k(x[i]) by Clenshaw's recurrence.
void clenshaw_serial(const std::vector<double> &coeffs, const std::vector<double> &xs,
                     std::vector<double> &ys);
void clenshaw_omp(const std::vector<double> &coeffs, const std::vector<double> &xs,
                  std::vector<double> &ys);
std::vector<double> clenshaw(const std::vector<double> &coeffs,
                             const std::vector<double> &xs, Exec exec = Exec::Parallel);

/// Tabulate a pure scalar function on a grid.
void tabulate_serial(const std::function<double(double)> &f, const std::vector<double> &xs,
                     std::vector<double> &ys);
void tabulate_omp(const std::function<double(double)> &f, const std::vector<double> &xs,
                  std::vector<double> &ys);
std::vector<double> tabulate(const std::function<double(double)> &f,
                             const std::vector<double> &xs, Exec exec = Exec::Parallel);

/// Phase-estimation outcome sampling: for each trial i draw m from the
/// amplitude-estimation outcome law of (p, M) using the stream
/// derive_seed(seed, i) and return sin²(πm/M).
void ae_trials_serial(double p, std::int64_t M, std::uint64_t seed, std::size_t trials,
                      std::vector<double> &out);
void ae_trials_omp(double p, std::int64_t M, std::uint64_t seed, std::size_t trials,
                   std::vector<double> &out);
std::vector<double> ae_trials(double p, std::int64_t M, std::uint64_t seed,
                              std::size_t trials, Exec exec = Exec::Parallel);

/// Cumulative outcome law P(m ≤ k), k = 0..M-1, of amplitude estimation.
std::vector<double> ae_outcome_cdf(double p, std::int64_t M);

} // namespace qbe::kernels
