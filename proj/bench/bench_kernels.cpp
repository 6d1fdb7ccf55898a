/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
// Serial reference vs OpenMP kernels. Same inputs, same outputs; only the
// schedule differs.

#include "qbe/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace {

std::vector<double> grid(std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

std::vector<double> coefficients(std::size_t d) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  std::vector<double> c(d + 1);
  for (auto &v : c)
    v = g(rng) / static_cast<double>(d + 1);
  return c;
}

template <void (*Kernel)(const std::vector<double> &, const std::vector<double> &,
                         std::vector<double> &)>
void BM_clenshaw(benchmark::State &state) {
  auto c = coefficients(static_cast<std::size_t>(state.range(0)));
  auto xs = grid(10001);
  std::vector<double> ys(xs.size());
  for (auto _ : state) {
    Kernel(c, xs, ys);
    benchmark::DoNotOptimize(ys.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}

template <void (*Kernel)(const std::function<double(double)> &, const std::vector<double> &,
                         std::vector<double> &)>
void BM_tabulate(benchmark::State &state) {
  auto xs = grid(static_cast<std::size_t>(state.range(0)));
  std::vector<double> ys(xs.size());
  std::function<double(double)> f = [](double x) {
    return std::sqrt(-std::log(std::abs(x) + 1e-3)) * std::exp(-x * x);
  };
  for (auto _ : state) {
    Kernel(f, xs, ys);
    benchmark::DoNotOptimize(ys.data());
  }
}

template <void (*Kernel)(double, std::int64_t, std::uint64_t, std::size_t,
                         std::vector<double> &)>
void BM_ae_trials(benchmark::State &state) {
  std::vector<double> out;
  for (auto _ : state) {
    Kernel(0.3, state.range(0), 7, 500, out);
    benchmark::DoNotOptimize(out.data());
  }
}

} // namespace

BENCHMARK(BM_clenshaw<qbe::kernels::clenshaw_serial>)->Arg(64)->Arg(1024)->Arg(8192);
BENCHMARK(BM_clenshaw<qbe::kernels::clenshaw_omp>)->Arg(64)->Arg(1024)->Arg(8192);
BENCHMARK(BM_tabulate<qbe::kernels::tabulate_serial>)->Arg(10001)->Arg(1 << 18);
BENCHMARK(BM_tabulate<qbe::kernels::tabulate_omp>)->Arg(10001)->Arg(1 << 18);
BENCHMARK(BM_ae_trials<qbe::kernels::ae_trials_serial>)->Arg(64)->Arg(1024);
BENCHMARK(BM_ae_trials<qbe::kernels::ae_trials_omp>)->Arg(64)->Arg(1024);

BENCHMARK_MAIN();
