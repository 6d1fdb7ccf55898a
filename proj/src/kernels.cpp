/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/kernels.hpp"
#include "qbe/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qbe::kernels {

namespace {

inline double clenshaw_point(const std::vector<double> &c, double x) {
  const std::size_t n = c.size();
  if (n == 0)
    return 0.0;
  double b1 = 0.0, b2 = 0.0;
  const double two_x = 2.0 * x;
  for (std::size_t k = n - 1; k >= 1; --k) {
    double b0 = c[k] + two_x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

// Fejér-kernel outcome law; Pr(m) = ½[F(m/M − θ/π) + F(m/M + θ/π)].
double fejer(double delta, std::int64_t M) {
  double s = std::sin(std::numbers::pi * delta);
  if (std::abs(s) < 1e-15)
    return 1.0;
  double num = std::sin(std::numbers::pi * static_cast<double>(M) * delta);
  return (num * num) / (static_cast<double>(M) * static_cast<double>(M) * s * s);
}

// Outcome sampler. Small M tabulates the exact law; large M uses the fact that
// the law is an equal mixture of two Fejér kernels and truncates each kernel to
// a window of ±kWindow bins (dropped tail mass < 1/(π² kWindow)).
struct Sampler {
  static constexpr std::int64_t kExactLimit = 1 << 16;
  static constexpr std::int64_t kWindow = 1 << 14;

  std::int64_t M;
  double omega;
  std::vector<double> cdf;        // exact law, or per-branch window law
  std::int64_t centre = 0;

  Sampler(double p, std::int64_t m) : M(m) {
    p = std::clamp(p, 0.0, 1.0);
    omega = std::asin(std::sqrt(p)) / std::numbers::pi;
    if (M <= kExactLimit) {
      cdf = ae_outcome_cdf(p, M);
      return;
    }
    // Branch +ω and -ω share the same window law up to reflection.
    double pos = omega * static_cast<double>(M);
    centre = static_cast<std::int64_t>(std::floor(pos));
    double frac = pos - std::floor(pos);
    cdf.resize(2 * kWindow + 2);
    double acc = 0.0;
    for (std::int64_t k = -kWindow; k <= kWindow + 1; ++k) {
      acc += fejer((static_cast<double>(k) - frac) / static_cast<double>(M), M);
      cdf[static_cast<std::size_t>(k + kWindow)] = acc;
    }
  }

  double draw(std::uint64_t stream) const {
    Rng rng(stream);
    auto uniform = [&rng]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    std::int64_t m;
    if (M <= kExactLimit) {
      auto it = std::lower_bound(cdf.begin(), cdf.end(), uniform() * cdf.back());
      m = std::min<std::int64_t>(it - cdf.begin(), M - 1);
    } else {
      bool negative = uniform() < 0.5;
      auto it = std::lower_bound(cdf.begin(), cdf.end(), uniform() * cdf.back());
      std::int64_t k = (it - cdf.begin()) - kWindow;
      m = centre + k;
      if (negative)
        m = -m;
      m = ((m % M) + M) % M;
    }
    double s = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(M));
    return s * s;
  }
};

// Eight independent recurrences interleaved so the compiler can vectorize
// across points; a single recurrence is latency-bound.
constexpr std::size_t kLanes = 8;

inline void clenshaw_lanes(const std::vector<double> &c, const double *x, double *y) {
  const std::size_t n = c.size();
  double b1[kLanes] = {}, b2[kLanes] = {}, tx[kLanes];
  for (std::size_t l = 0; l < kLanes; ++l)
    tx[l] = 2.0 * x[l];
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double ck = c[k];
    for (std::size_t l = 0; l < kLanes; ++l) {
      double b0 = ck + tx[l] * b1[l] - b2[l];
      b2[l] = b1[l];
      b1[l] = b0;
    }
  }
  for (std::size_t l = 0; l < kLanes; ++l)
    y[l] = c[0] + x[l] * b1[l] - b2[l];
}

void clenshaw_range(const std::vector<double> &coeffs, const std::vector<double> &xs,
                    std::vector<double> &ys, std::size_t begin, std::size_t end) {
  std::size_t i = begin;
  if (coeffs.size() > 1)
    for (; i + kLanes <= end; i += kLanes)
      clenshaw_lanes(coeffs, xs.data() + i, ys.data() + i);
  for (; i < end; ++i)
    ys[i] = clenshaw_point(coeffs, xs[i]);
}

} // namespace

void clenshaw_serial(const std::vector<double> &coeffs, const std::vector<double> &xs,
                     std::vector<double> &ys) {
  ys.resize(xs.size());
  clenshaw_range(coeffs, xs, ys, 0, xs.size());
}

void clenshaw_omp(const std::vector<double> &coeffs, const std::vector<double> &xs,
                  std::vector<double> &ys) {
  ys.resize(xs.size());
  const auto blocks = static_cast<std::ptrdiff_t>((xs.size() + 255) / 256);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b)
    clenshaw_range(coeffs, xs, ys, static_cast<std::size_t>(b) * 256,
                   std::min(xs.size(), static_cast<std::size_t>(b + 1) * 256));
}

std::vector<double> clenshaw(const std::vector<double> &coeffs, const std::vector<double> &xs,
                             Exec exec) {
  std::vector<double> ys;
  // Small problems are not worth a parallel region.
  if (exec == Exec::Parallel && coeffs.size() * xs.size() > 200000)
    clenshaw_omp(coeffs, xs, ys);
  else
    clenshaw_serial(coeffs, xs, ys);
  return ys;
}

void tabulate_serial(const std::function<double(double)> &f, const std::vector<double> &xs,
                     std::vector<double> &ys) {
  ys.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    ys[i] = f(xs[i]);
}

void tabulate_omp(const std::function<double(double)> &f, const std::vector<double> &xs,
                  std::vector<double> &ys) {
  ys.resize(xs.size());
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    ys[i] = f(xs[i]);
}

std::vector<double> tabulate(const std::function<double(double)> &f,
                             const std::vector<double> &xs, Exec exec) {
  std::vector<double> ys;
  if (exec == Exec::Parallel && xs.size() > 4096)
    tabulate_omp(f, xs, ys);
  else
    tabulate_serial(f, xs, ys);
  return ys;
}

std::vector<double> ae_outcome_cdf(double p, std::int64_t M) {
  if (M < 1)
    throw ValidationError("amplitude estimation: M must be >= 1");
  p = std::clamp(p, 0.0, 1.0);
  const double omega = std::asin(std::sqrt(p)) / std::numbers::pi;
  std::vector<double> cdf(static_cast<std::size_t>(M));
  double acc = 0.0;
  for (std::int64_t m = 0; m < M; ++m) {
    double y = static_cast<double>(m) / static_cast<double>(M);
    acc += 0.5 * (fejer(y - omega, M) + fejer(y + omega, M));
    cdf[static_cast<std::size_t>(m)] = acc;
  }
  return cdf;
}

void ae_trials_serial(double p, std::int64_t M, std::uint64_t seed, std::size_t trials,
                      std::vector<double> &out) {
  const Sampler sampler(p, M);
  out.resize(trials);
  for (std::size_t i = 0; i < trials; ++i)
    out[i] = sampler.draw(derive_seed(seed, i));
}

void ae_trials_omp(double p, std::int64_t M, std::uint64_t seed, std::size_t trials,
                   std::vector<double> &out) {
  const Sampler sampler(p, M);
  out.resize(trials);
  const auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = sampler.draw(derive_seed(seed, static_cast<std::uint64_t>(i)));
}

std::vector<double> ae_trials(double p, std::int64_t M, std::uint64_t seed, std::size_t trials,
                              Exec exec) {
  std::vector<double> out;
  if (exec == Exec::Parallel && trials > 64)
    ae_trials_omp(p, M, seed, trials, out);
  else
    ae_trials_serial(p, M, seed, trials, out);
  return out;
}

} // namespace qbe::kernels
