/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/inequalities.hpp"

#include "qbe/encodings.hpp"
#include "qbe/transform.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qbe {

namespace {

constexpr double kSupportTol = 1e-12;

Matrix spectral_apply(const Matrix &m, const std::function<double(double)> &f) {
  auto sd = spectral_decompose(hermitian_part(m));
  RealVector d(sd.eigenvalues.size());
  for (Eigen::Index k = 0; k < d.size(); ++k)
    d(k) = f(sd.eigenvalues(k));
  return sd.eigenvectors * d.cast<cplx>().asDiagonal() * sd.eigenvectors.adjoint();
}

double trace_power(const Matrix &m, double alpha) {
  auto sd = spectral_decompose(hermitian_part(m));
  double s = 0.0;
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k)
    if (sd.eigenvalues(k) > kSupportTol)
      s += std::pow(sd.eigenvalues(k), alpha);
  return s;
}

void record(SuiteResult &out, const InequalityCheck &c, double tol = 1e-10) {
  ++out.trials;
  if (!c.holds(tol))
    ++out.violations;
  if (c.lhs > tol)
    out.worst_ratio = std::max(out.worst_ratio, c.ratio());
}

double uniform(Rng &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::Index pick(Rng &rng, Eigen::Index lo, Eigen::Index hi) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

} // namespace

InequalityCheck trace_distance_truncation_bound(const Matrix &nu, const Matrix &mu, double alpha,
                                                double delta, int rank) {
  if (!(alpha > 0.0) || delta < 0.0 || rank < 0)
    throw ValidationError("truncation bound: need alpha > 0, delta >= 0, rank >= 0");
  auto sd = spectral_decompose(hermitian_part(mu));
  const Eigen::Index N = mu.rows();
  Matrix gap = Matrix::Zero(N, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    double l = sd.eigenvalues(k);
    if (l > kSupportTol && l <= delta)
      gap += sd.eigenvectors.col(k) * sd.eigenvectors.col(k).adjoint();
  }
  Matrix p = spectral_apply(nu, [alpha](double x) { return std::pow(std::abs(x), alpha / 2.0); });
  InequalityCheck out;
  out.lhs = std::max(0.0, (p * gap * p).trace().real());
  out.rhs = 2.0 * rank * std::pow(delta, std::min(alpha, 1.0) / 2.0);
  return out;
}

InequalityCheck holder_power_norm_check(const Matrix &a, const Vector &psi, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("Hoelder check: alpha must lie in (0, 1)");
  if (psi.norm() == 0.0)
    throw ValidationError("Hoelder check: psi must be nonzero");
  if (!is_psd(a))
    throw ValidationError("Hoelder check: A must be PSD");
  Matrix aa = spectral_apply(a, [alpha](double x) { return x > 0.0 ? std::pow(x, alpha) : 0.0; });
  InequalityCheck out;
  out.lhs = (aa * psi).norm();
  out.rhs = std::pow((a * psi).norm(), alpha) * std::pow(psi.norm(), 1.0 - alpha);
  return out;
}

InequalityCheck weyl_perturbation_bound(const Matrix &a, const Matrix &b, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("Weyl bound: alpha must lie in (0, 1)");
  if (!is_psd(a) || !is_psd(b))
    throw ValidationError("Weyl bound: both operators must be PSD");
  const int r = std::max(delta_rank(a, kSupportTol), delta_rank(b, kSupportTol));
  InequalityCheck out;
  out.lhs = std::abs(trace_power(a, alpha) - trace_power(b, alpha));
  out.rhs = 5.0 * r * std::pow(op_norm(a - b), alpha);
  return out;
}

std::vector<std::string> suite_names() { return {"weyl", "truncation", "holder", "sandwich"}; }

SuiteResult run_suite(const std::string &name, int trials, std::uint64_t seed, double delta) {
  if (trials < 0)
    throw ValidationError("verify: trials must be non-negative");
  SuiteResult out;
  out.name = name;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(s);
    const Eigen::Index N = Eigen::Index(1) << pick(rng, 1, 4);
    const Eigen::Index r1 = pick(rng, 1, std::min<Eigen::Index>(4, N));
    const Eigen::Index r2 = pick(rng, 1, std::min<Eigen::Index>(4, N));
    if (name == "weyl") {
      const double alpha = uniform(rng, 0.05, 0.95);
      Matrix a = ginibre_state(N, r1, derive_seed(s, 1));
      Matrix b;
      if (t % 2 == 0) {
        b = ginibre_state(N, r2, derive_seed(s, 2));
      } else {
        // Small perturbation inside the support of A (rank preserved).
        auto sd = spectral_decompose(a);
        RealVector ev = sd.eigenvalues;
        double scale = std::pow(10.0, uniform(rng, -6.0, -1.0));
        for (Eigen::Index k = 0; k < ev.size(); ++k)
          if (ev(k) > kSupportTol)
            ev(k) = std::max(0.0, ev(k) + scale * uniform(rng, -1.0, 1.0));
        b = sd.eigenvectors * ev.cast<cplx>().asDiagonal() * sd.eigenvectors.adjoint();
      }
      record(out, weyl_perturbation_bound(a, b, alpha));
    } else if (name == "truncation") {
      const double alpha = uniform(rng, 0.1, 3.0);
      const double d = delta >= 0.0 ? delta : uniform(rng, 1e-4, 0.1);
      Matrix rho = ginibre_state(N, r1, derive_seed(s, 1));
      Matrix sigma = t % 5 == 0 ? rho : ginibre_state(N, r2, derive_seed(s, 2));
      const int r = std::max(delta_rank(rho, kSupportTol), delta_rank(sigma, kSupportTol));
      record(out, trace_distance_truncation_bound(0.5 * (rho - sigma), 0.5 * (rho + sigma), alpha,
                                                  d, r));
    } else if (name == "holder") {
      const double alpha = uniform(rng, 0.05, 0.95);
      Matrix a = ginibre_state(N, r1, derive_seed(s, 1)) * uniform(rng, 0.1, 1.0);
      Vector psi = random_vector(N, rng);
      if (t % 7 == 0) // eigenvector: equality case
        psi = spectral_decompose(a).eigenvectors.col(0);
      record(out, holder_power_norm_check(a, psi, alpha));
    } else if (name == "sandwich") {
      const double d = 0.05, e = 0.01;
      Matrix rho = ginibre_state(N, r1, derive_seed(s, 1));
      PurifiedAccessOracle o = purification_of(SubnormalizedDensityOperator(rho));
      PurifiedAccessOracle pi = eigenvalue_threshold_projector(o, d, e);
      SandwichCheck c = check_threshold_sandwich(rho, pi.encoded(), d, e);
      // Report as lhs = worst violation depth, rhs = tolerance.
      InequalityCheck ic;
      ic.lhs = std::max(0.0, -std::min(c.lower_gap, c.upper_gap));
      ic.rhs = c.tolerance;
      record(out, ic, 0.0);
    } else {
      throw ValidationError("unknown verification suite '" + name + "'");
    }
  }
  return out;
}

} // namespace qbe
