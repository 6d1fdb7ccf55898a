/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/transform.hpp"

#include "qbe/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

namespace qbe {

namespace {

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw ValidationError(msg);
}

// P applied to a Hermitian matrix through its eigendecomposition.
Matrix apply_polynomial(const CertifiedPolynomial &p, const Matrix &a) {
  auto sd = spectral_decompose(hermitian_part(a));
  std::vector<double> xs(sd.eigenvalues.size());
  for (std::size_t k = 0; k < xs.size(); ++k)
    xs[k] = std::clamp(sd.eigenvalues(static_cast<Eigen::Index>(k)), -1.0, 1.0);
  auto ys = p.evaluate(xs);
  RealVector d(static_cast<Eigen::Index>(ys.size()));
  for (std::size_t k = 0; k < ys.size(); ++k)
    d(static_cast<Eigen::Index>(k)) = ys[k];
  return sd.eigenvectors * d.cast<cplx>().asDiagonal() * sd.eigenvectors.adjoint();
}

Matrix apply_function(const Matrix &a, const std::function<double(double)> &f) {
  auto sd = spectral_decompose(hermitian_part(a));
  RealVector d(sd.eigenvalues.size());
  for (Eigen::Index k = 0; k < d.size(); ++k)
    d(k) = f(sd.eigenvalues(k));
  return sd.eigenvectors * d.cast<cplx>().asDiagonal() * sd.eigenvectors.adjoint();
}

// Σ |c_k| k²: a bound on sup |P'| over [−1, 1].
double derivative_bound(const CertifiedPolynomial &p) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.chebyshev_coefficients.size(); ++k)
    s += std::abs(p.chebyshev_coefficients[k]) * double(k) * double(k);
  return s;
}

std::vector<double> uniform(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return xs;
}

// Case bound of x ↦ x P(x)² against x f(x)² for PSD arguments:
//   [δ, 1]:  x |P + f| |P − f|
//   [0, δ):  δ·max|P|² + sup x f(x)²
double density_case_bound(const CertifiedPolynomial &p, const std::function<double(double)> &f,
                          double delta) {
  auto xs = certification_grid(delta, 1.0);
  auto ps = p.evaluate(xs);
  double hi = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double fx = f(xs[i]);
    hi = std::max(hi, xs[i] * std::abs(ps[i] + fx) * std::abs(ps[i] - fx));
  }
  double tail = 0.0;
  for (double x : uniform(delta * 1e-9, delta, 2001)) {
    double fx = f(x);
    tail = std::max(tail, x * fx * fx);
  }
  double lo = delta * p.global_bound * p.global_bound + tail;
  return std::max(hi, lo) * (1.0 + kCertRelTol);
}

// FFTW planning is not thread-safe.
void run_r2r(std::vector<double> &in, std::vector<double> &out, fftw_r2r_kind kind) {
  static std::mutex plan_mutex;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_r2r_1d(static_cast<int>(in.size()), in.data(), out.data(), kind,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex);
  fftw_destroy_plan(plan);
}

// Chebyshev coefficients of the product through values at n ≥ d₁ + d₂ + 1
// first-kind nodes: DCT-III to values, pointwise product, DCT-II back.
std::vector<double> chebyshev_product(const std::vector<double> &a, const std::vector<double> &b) {
  const int n = static_cast<int>(a.size() + b.size() - 1);
  auto values = [n](const std::vector<double> &c) {
    std::vector<double> in(static_cast<std::size_t>(n), 0.0), out(static_cast<std::size_t>(n));
    in[0] = c[0];
    for (std::size_t k = 1; k < c.size(); ++k)
      in[k] = 0.5 * c[k];
    run_r2r(in, out, FFTW_REDFT01);
    return out;
  };
  std::vector<double> va = values(a), vb = values(b), c(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    va[static_cast<std::size_t>(j)] *= vb[static_cast<std::size_t>(j)];
  run_r2r(va, c, FFTW_REDFT10);
  for (auto &x : c)
    x /= n;
  c[0] *= 0.5;
  return c;
}

Parity product_parity(Parity a, Parity b) {
  if (a == Parity::None || b == Parity::None)
    return Parity::None;
  return a == b ? Parity::Even : Parity::Odd;
}

PolyPtr multiply_uncached(const PolyPtr &p, const PolyPtr &q, const std::string &name) {
  std::vector<double> c = chebyshev_product(p->chebyshev_coefficients, q->chebyshev_coefficients);
  auto out = std::make_shared<CertifiedPolynomial>();
  out->parity = product_parity(p->parity, q->parity);
  if (out->parity != Parity::None)
    for (std::size_t k = (out->parity == Parity::Even ? 1 : 0); k < c.size(); k += 2)
      c[k] = 0.0;
  out->chebyshev_coefficients = std::move(c);
  out->target = {name,
                 {{"degree_p", double(p->degree())}, {"degree_q", double(q->degree())}},
                 [p, q](double x) { return (*p)(x) * (*q)(x); }};
  out->interval_lo = -1.0;
  out->interval_hi = 1.0;
  out->requested_error = 1e-12;
  out->formula_degree = p->formula_degree + q->formula_degree;
  auto xs = certification_grid(-1.0, 1.0);
  auto ys = out->evaluate(xs), ps = p->evaluate(xs), qs = q->evaluate(xs);
  double err = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out->global_bound = std::max(out->global_bound, std::abs(ys[i]));
    err = std::max(err, std::abs(ys[i] - ps[i] * qs[i]));
  }
  out->certified_error = err;
  out->allowed_bound = p->allowed_bound * q->allowed_bound;
  out->bands = {{{Band::Kind::Approximate, -1.0, 1.0, 0, 0, false}, err, true}};
  return out;
}

} // namespace

PolyPtr multiply(const PolyPtr &p, const PolyPtr &q, const std::string &name) {
  require(p && q, "multiply: null polynomial");
  // Inputs are usually memoized, so products are cached by identity. The
  // factors are kept alive in the entry so addresses cannot be reused.
  using Key = std::tuple<const void *, const void *, std::string>;
  struct Entry {
    PolyPtr p, q, product;
  };
  static std::mutex mutex;
  static std::map<Key, Entry> cache;
  const Key key{p.get(), q.get(), name};
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end())
      return it->second.product;
  }
  PolyPtr out = multiply_uncached(p, q, name);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, Entry{p, q, out});
  return out;
}

UnitaryBlockEncoding qsvt_unitary(const UnitaryBlockEncoding &u, const PolyPtr &p,
                                  double precision) {
  require(p != nullptr, "qsvt: null polynomial");
  require(std::abs(u.scale() - 1.0) <= 1e-12, "qsvt: the block-encoding must have scale 1");
  require(p->parity != Parity::None, "qsvt: the polynomial must have definite parity");
  require(p->global_bound <= std::min(p->allowed_bound, 1.0) + kBoundSlack,
          "qsvt: polynomial exceeds 1 in magnitude on [-1, 1]");
  Matrix a = u.block();
  require(hermiticity_defect(a) <= kHermitianTol * std::max(1.0, op_norm(a)),
          "qsvt: encoded block is not Hermitian");

  const int d = p->degree();
  const double an = u.declared_ancillas();
  Cost local;
  local.controlled = 1.0;
  local.gates = (GateExpression::symbol("a", an) + GateExpression::constant(1.0)) *
                GateExpression::symbol("d", d);
  CostTree cost = make_cost("qsvt", local, {make_cost("qsvt queries", Cost{}, {u.cost()}, d)});

  UnitaryBlockEncoding dil = dilate(apply_polynomial(*p, a));
  // Error of the input encoding moves P(A) by at most sup|P'|·ε.
  double err = precision + derivative_bound(*p) * u.declared_error();
  UnitaryBlockEncoding res(dil.unitary(), u.system_qubits(), 1, 1.0, err, cost,
                           {"quantum singular value transformation",
                            {{"degree", double(d)}, {"precision", precision}}});
  res.declare(u.declared_ancillas() + 2);
  Matrix t = u.target() ? *u.target() : a;
  res.with_target(apply_polynomial(*p, t), p->target.name + "(A)");
  return res;
}

PurifiedAccessOracle qsvt_density(const PurifiedAccessOracle &oracle, const PolyPtr &p,
                                  double precision) {
  UnitaryBlockEncoding be = block_encode_density(oracle);
  UnitaryBlockEncoding q = qsvt_unitary(be, p, precision);
  PurifiedAccessOracle out = evolve(oracle, q).compacted();
  return out;
}

PurifiedAccessOracle transform_with_target(const PurifiedAccessOracle &oracle,
                                           const std::function<double(double)> &f,
                                           const PolyPtr &p, double delta, double precision) {
  require(delta > 0.0 && delta < 1.0, "transform: delta must lie in (0, 1)");
  PurifiedAccessOracle out = qsvt_density(oracle, p, precision);
  Matrix t = oracle.target() ? *oracle.target() : oracle.encoded();
  Matrix target = apply_function(t, [&](double x) {
    if (x <= 0.0)
      return 0.0;
    double fx = f(x);
    return x * fx * fx;
  });
  // d/dx (x P²) = P² + 2x P P'
  const double gb = p->global_bound;
  double lip = gb * gb + 2.0 * gb * derivative_bound(*p);
  double err = density_case_bound(*p, f, delta) + 2.5 * precision + lip * oracle.declared_error();
  out.with_target(hermitian_part(target), err);
  return out;
}

PurifiedAccessOracle positive_power_density(const PurifiedAccessOracle &oracle, double c,
                                            double delta, double epsilon) {
  require(c > 0.0 && c < 1.0, "positive_power_density: c must lie in (0, 1)");
  const double cp = 0.5 * (1.0 - c);
  PolyPtr p = approx_negative_power(cp, delta, epsilon);
  const double k = 0.5 * std::pow(delta, cp);
  auto f = [k, cp](double x) { return k * std::pow(x, -cp); };

  // Run on the realized operator; the error of the input is charged through
  // Hölder continuity ‖X^c − Y^c‖ ≤ ‖X − Y‖^c instead of a Lipschitz bound.
  const double ea = oracle.declared_error();
  PurifiedAccessOracle base = oracle;
  if (ea > 0.0)
    base.with_target(oracle.encoded(), 0.0);
  PurifiedAccessOracle out = transform_with_target(base, f, p, delta);
  const double scale = 4.0 * std::pow(delta, c - 1.0);
  double err = out.declared_error() + std::pow(ea, c) / scale;
  Matrix t = oracle.target() ? *oracle.target() : oracle.encoded();
  Matrix target = apply_function(t, [c](double x) { return x > 0.0 ? std::pow(x, c) : 0.0; });
  out.with_target(hermitian_part(target) / scale, err);
  return PurifiedAccessOracle(out.state(), out.system_qubits(), out.block_ancillas(),
                              out.purifying_ancillas(), out.cost(),
                              {"positive power of a density operator",
                               {{"c", c}, {"delta", delta}, {"epsilon", epsilon},
                                {"scale", scale}, {"degree", double(p->degree())}}})
      .declare(out.declared_block_ancillas(), out.declared_purifying_ancillas())
      .with_target(*out.target(), err);
}

UnitaryBlockEncoding positive_power_unitary(const UnitaryBlockEncoding &u, double c, double delta,
                                            double epsilon) {
  require(c > 0.0 && c < 1.0, "positive_power_unitary: c must lie in (0, 1)");
  PolyPtr p = approx_positive_power(c, delta, epsilon);
  PolyPtr r = approx_support_indicator(delta, epsilon);
  UnitaryBlockEncoding up = qsvt_unitary(u, p);
  UnitaryBlockEncoding ur = qsvt_unitary(u, r);
  UnitaryBlockEncoding prod = product(up, ur);

  const double ep = p->certified_error, er = r->certified_error;
  double outer = ep + 0.5 * er;
  double inner = p->global_bound * er + 0.5 * std::pow(delta, c);
  double middle = ep + 0.5 * std::pow(2.0 * delta, c);
  double cases = std::max({outer, inner, middle});
  double err = 2.0 * (2.0 * kQsvtPrecision + cases) +
               (u.declared_error() > 0.0 ? std::pow(u.declared_error(), c) : 0.0);

  Matrix t = u.target() ? *u.target() : u.block();
  Matrix target = apply_function(t, [c](double x) { return std::pow(std::abs(x), c); });
  UnitaryBlockEncoding res(prod.unitary(), prod.system_qubits(), prod.ancillas(), 2.0, err,
                           prod.cost(),
                           {"positive power of a block-encoded matrix",
                            {{"c", c},
                             {"delta", delta},
                             {"epsilon", epsilon},
                             {"degree_p", double(p->degree())},
                             {"degree_r", double(r->degree())}}});
  res.declare(prod.declared_ancillas());
  res.with_target(hermitian_part(target), "|A|^c");
  return res.compacted();
}

std::pair<double, double> threshold_sandwich_coefficients(double delta, double epsilon) {
  const double sd = std::sqrt(delta);
  return {delta / 4.0 * (1.0 - 2.0 * epsilon) - sd * epsilon,
          delta / 4.0 + epsilon * epsilon + sd * epsilon};
}

PurifiedAccessOracle eigenvalue_threshold_projector(const PurifiedAccessOracle &oracle,
                                                    double delta, double epsilon) {
  require(delta > 0.0 && delta <= 0.1, "threshold projector: delta must lie in (0, 0.1]");
  require(epsilon > 0.0 && epsilon <= 0.1, "threshold projector: epsilon must lie in (0, 0.1]");
  require(32.0 * epsilon * epsilon <= delta * (1.0 + 1e-12),
          "threshold projector: requires 32 epsilon^2 <= delta");
  PolyPtr p = approx_negative_power(0.5, delta, epsilon);
  PolyPtr r = approx_support_indicator(delta, epsilon);
  PolyPtr q = multiply(p, r, "threshold");
  PurifiedAccessOracle out = qsvt_density(oracle, q);
  auto [lo, hi] = threshold_sandwich_coefficients(delta, epsilon);
  PurifiedAccessOracle res(out.state(), out.system_qubits(), out.block_ancillas(),
                           out.purifying_ancillas(), out.cost(),
                           {"eigenvalue threshold projector",
                            {{"delta", delta},
                             {"epsilon", epsilon},
                             {"lower", lo},
                             {"upper", hi},
                             {"degree", double(q->degree())}}});
  res.declare(out.declared_block_ancillas(), out.declared_purifying_ancillas());
  if (out.target())
    res.with_target(*out.target(), out.declared_error());
  return res;
}

bool psd_leq(const Matrix &lo, const Matrix &hi) {
  return min_eigenvalue(hermitian_part(hi - lo)) >= -1e-8 * std::max(1.0, op_norm(hi));
}

SandwichCheck check_threshold_sandwich(const Matrix &a, const Matrix &b, double delta,
                                       double epsilon) {
  auto [lo, hi] = threshold_sandwich_coefficients(delta, epsilon);
  auto sd = spectral_decompose(hermitian_part(a));
  const Eigen::Index N = a.rows();
  Matrix pi_2d = Matrix::Zero(N, N), pi = Matrix::Zero(N, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    Matrix v = sd.eigenvectors.col(k) * sd.eigenvectors.col(k).adjoint();
    if (sd.eigenvalues(k) >= 2.0 * delta)
      pi_2d += v;
    if (sd.eigenvalues(k) > 1e-12)
      pi += v;
  }
  SandwichCheck out;
  out.tolerance = 1e-8 * std::max(1.0, op_norm(b));
  out.lower_gap = min_eigenvalue(hermitian_part(b - lo * pi_2d));
  out.upper_gap = min_eigenvalue(hermitian_part(hi * pi - b));
  out.holds = out.lower_gap >= -out.tolerance && out.upper_gap >= -out.tolerance;
  return out;
}

} // namespace qbe
