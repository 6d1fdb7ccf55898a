/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/polyapprox.hpp"
#include "qbe/kernels.hpp"
#include "qbe/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <numbers>

namespace qbe {

std::string to_string(Parity p) {
  switch (p) {
  case Parity::Even: return "even";
  case Parity::Odd: return "odd";
  case Parity::None: return "none";
  }
  return "none";
}

int degree_cap() {
  if (const char *env = std::getenv("QBE_DEGREE_CAP")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0)
      return static_cast<int>(v);
  }
  return 1 << 17;
}

// ---------------------------------------------------------------------------
// Basic numerics

double erfc_inv(double y) {
  if (!(y > 0.0 && y <= 1.0))
    throw ValidationError("erfc_inv: argument outside (0, 1]");
  if (y == 1.0)
    return 0.0;
  // Asymptotic start, then Newton on erfc(x) − y in log space for tiny y.
  double x = std::sqrt(std::max(0.0, -std::log(y * std::sqrt(std::numbers::pi))));
  if (x < 0.5)
    x = 0.5 * (1.0 - y) * std::sqrt(std::numbers::pi);
  for (int it = 0; it < 100; ++it) {
    double e = std::erfc(x);
    double d = -2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x);
    double step;
    if (e > 0.0 && y < 1e-3)
      step = (std::log(e) - std::log(y)) / (d / e); // Newton on log erfc
    else
      step = (e - y) / d;
    x -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x)))
      break;
  }
  return x;
}

std::vector<double> certification_grid(double lo, double hi, int points) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(points + kChebyshevExtrema));
  if (points == 1 || hi <= lo) {
    xs.push_back(lo);
  } else {
    for (int i = 0; i < points; ++i)
      xs.push_back(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
  }
  for (int k = 0; k < kChebyshevExtrema; ++k) {
    double x = std::cos(std::numbers::pi * k / (kChebyshevExtrema - 1));
    if (x >= lo && x <= hi)
      xs.push_back(x);
  }
  return xs;
}

std::vector<double> chebyshev_interpolate(const std::function<double(double)> &f, int degree,
                                          Parity symmetry) {
  if (degree < 0)
    throw ValidationError("chebyshev_interpolate: negative degree");
  const int n = degree + 1;
  std::vector<double> nodes(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    nodes[static_cast<std::size_t>(j)] = std::cos(std::numbers::pi * (j + 0.5) / n);
  std::vector<double> vals;
  if (symmetry == Parity::None) {
    vals = kernels::tabulate(f, nodes);
  } else {
    // nodes[n − 1 − j] = −nodes[j]; the middle node (odd n) is 0.
    const std::size_t h = static_cast<std::size_t>((n + 1) / 2);
    std::vector<double> head(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(h));
    if (n % 2 == 1)
      head.back() = 0.0;
    std::vector<double> fh = kernels::tabulate(f, head);
    const double sign = symmetry == Parity::Even ? 1.0 : -1.0;
    vals.resize(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < h; ++j) {
      vals[j] = fh[j];
      vals[static_cast<std::size_t>(n) - 1 - j] = sign * fh[j];
    }
    if (n % 2 == 1 && symmetry == Parity::Odd)
      vals[h - 1] = 0.0;
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  {
    // FFTW planning is not thread-safe.
    static std::mutex plan_mutex;
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(plan_mutex);
      plan = fftw_plan_r2r_1d(n, vals.data(), out.data(), FFTW_REDFT10, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  for (auto &c : out)
    c /= n;
  out[0] *= 0.5;
  return out;
}

std::vector<double> chebyshev_to_monomial(const std::vector<double> &c) {
  const std::size_t n = c.size();
  std::vector<double> m(n, 0.0);
  if (n == 0)
    return m;
  // T_0 = 1, T_1 = x, T_{k+1} = 2x T_k − T_{k−1}, tracked in monomial form.
  std::vector<double> tkm1(n, 0.0), tk(n, 0.0);
  tkm1[0] = 1.0;
  m[0] += c[0];
  if (n > 1) {
    tk[1] = 1.0;
    m[1] += c[1];
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i)
      next[i + 1] += 2.0 * tk[i];
    for (std::size_t i = 0; i < n; ++i)
      next[i] -= tkm1[i];
    for (std::size_t i = 0; i < n; ++i)
      m[i] += c[k + 1] * next[i];
    tkm1 = std::move(tk);
    tk = std::move(next);
  }
  return m;
}

double monomial_eval_compensated(const std::vector<double> &m, double x) {
  // Neumaier summation of the terms m_k x^k.
  double sum = 0.0, comp = 0.0, xp = 1.0;
  for (double mk : m) {
    double term = mk * xp;
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    xp *= x;
  }
  return sum + comp;
}

// ---------------------------------------------------------------------------
// CertifiedPolynomial

int CertifiedPolynomial::degree() const {
  for (std::size_t k = chebyshev_coefficients.size(); k-- > 0;)
    if (chebyshev_coefficients[k] != 0.0)
      return static_cast<int>(k);
  return 0;
}

double CertifiedPolynomial::operator()(double x) const {
  return kernels::clenshaw(chebyshev_coefficients, {x}, kernels::Exec::Serial)[0];
}

namespace {

// An even series Σ c_2k T_2k(x) is Σ c_2k T_k(2x² − 1): half the Clenshaw
// work. Used only when the odd coefficients are exactly zero.
std::vector<double> evaluate_series(const std::vector<double> &c, const std::vector<double> &xs) {
  bool even = c.size() > 2;
  for (std::size_t k = 1; even && k < c.size(); k += 2)
    even = c[k] == 0.0;
  if (!even)
    return kernels::clenshaw(c, xs);
  std::vector<double> half((c.size() + 1) / 2), ys(xs.size());
  for (std::size_t k = 0; k < half.size(); ++k)
    half[k] = c[2 * k];
  for (std::size_t i = 0; i < xs.size(); ++i)
    ys[i] = 2.0 * xs[i] * xs[i] - 1.0;
  return kernels::clenshaw(half, ys);
}

} // namespace

std::vector<double> CertifiedPolynomial::evaluate(const std::vector<double> &xs) const {
  return evaluate_series(chebyshev_coefficients, xs);
}

namespace {

bool parity_ok(const std::vector<double> &c, Parity p) {
  if (p == Parity::None)
    return true;
  std::size_t wrong = p == Parity::Even ? 1 : 0;
  for (std::size_t k = wrong; k < c.size(); k += 2)
    if (std::abs(c[k]) > kParityZeroTol)
      return false;
  return true;
}

// Evaluation of a mirrored band uses f(|x|) for even and sign(x) f(|x|) for odd.
double mirrored_target(const std::function<double(double)> &f, Parity parity, double x) {
  if (x >= 0.0)
    return f(x);
  double v = f(-x);
  return parity == Parity::Odd ? -v : v;
}

} // namespace

bool CertifiedPolynomial::verify() const {
  if (!parity_ok(chebyshev_coefficients, parity))
    return false;
  auto gx = certification_grid(-1.0, 1.0);
  auto gp = evaluate(gx);
  double gmax = 0.0;
  for (double v : gp)
    gmax = std::max(gmax, std::abs(v));
  if (gmax > global_bound + kBoundSlack || global_bound > allowed_bound + kBoundSlack)
    return false;
  for (const auto &br : bands) {
    std::vector<std::pair<double, double>> ranges = {{br.band.lo, br.band.hi}};
    if (br.band.mirror)
      ranges.push_back({-br.band.hi, -br.band.lo});
    for (auto [lo, hi] : ranges) {
      auto xs = certification_grid(lo, hi);
      auto ps = evaluate(xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (br.band.kind == Band::Kind::Approximate) {
          double fx = mirrored_target(target.f, parity, xs[i]);
          if (std::abs(ps[i] - fx) > certified_error * (1.0 + kCertRelTol) + 1e-15)
            return false;
        } else if (ps[i] < br.band.ymin - 1e-12 || ps[i] > br.band.ymax + 1e-12) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Construction engine

namespace {

// ½[erf(k(x − L)) − erf(k(x − R))]: ≈1 on (L, R), ≈0 outside.
double bump(double x, double L, double R, double k) {
  return 0.5 * (std::erf(k * (x - L)) - std::erf(k * (x - R)));
}

enum class Fix { Scale, UnitInterval };

struct Recipe {
  std::string key;
  TargetDescriptor target;
  double lo = 0.0, hi = 1.0;
  Parity parity = Parity::None;
  std::function<double(double)> surrogate;
  std::vector<Band> bands;
  double allowed = 1.0;
  double formula = 1.0;
  double epsilon = 0.0;
  Fix fix = Fix::Scale;
};

struct GridSet {
  std::vector<double> xs;                         // concatenated
  std::vector<std::size_t> offsets;               // per band segment, then global
  std::vector<std::size_t> band_of;               // segment → band index (global = npos)
  std::vector<double> fx;                         // target values (approx bands)
  std::vector<double> gx;                         // surrogate at every point
};

constexpr std::size_t kGlobal = static_cast<std::size_t>(-1);

GridSet make_grids(const Recipe &r, int points) {
  GridSet g;
  for (std::size_t b = 0; b < r.bands.size(); ++b) {
    const Band &band = r.bands[b];
    std::vector<std::pair<double, double>> ranges = {{band.lo, band.hi}};
    if (band.mirror)
      ranges.push_back({-band.hi, -band.lo});
    for (auto [lo, hi] : ranges) {
      auto xs = certification_grid(lo, hi, points);
      g.offsets.push_back(g.xs.size());
      g.band_of.push_back(b);
      g.xs.insert(g.xs.end(), xs.begin(), xs.end());
    }
  }
  auto xs = certification_grid(-1.0, 1.0, points);
  g.offsets.push_back(g.xs.size());
  g.band_of.push_back(kGlobal);
  g.xs.insert(g.xs.end(), xs.begin(), xs.end());
  g.offsets.push_back(g.xs.size());

  g.fx.assign(g.xs.size(), 0.0);
  for (std::size_t s = 0; s + 1 < g.offsets.size(); ++s) {
    if (g.band_of[s] == kGlobal || r.bands[g.band_of[s]].kind != Band::Kind::Approximate)
      continue;
    for (std::size_t i = g.offsets[s]; i < g.offsets[s + 1]; ++i)
      g.fx[i] = mirrored_target(r.target.f, r.parity, g.xs[i]);
  }
  if (r.fix == Fix::UnitInterval)
    g.gx = kernels::tabulate(r.surrogate, g.xs);
  return g;
}

struct Outcome {
  std::vector<double> coeffs;
  std::vector<BandReport> reports;
  double certified_error = 0.0;
  double global_bound = 0.0;
  bool pass = false;
};

Outcome assess(const Recipe &r, const GridSet &g, std::vector<double> c) {
  // Parity is imposed exactly in coefficient space.
  if (r.parity != Parity::None)
    for (std::size_t k = (r.parity == Parity::Even ? 1 : 0); k < c.size(); k += 2)
      c[k] = 0.0;
  auto ps = evaluate_series(c, g.xs);
  const std::size_t gs = g.offsets[g.offsets.size() - 2];

  double gmax = 0.0;
  if (r.fix == Fix::UnitInterval) {
    // P' = (P + η)/(1 + 2η) maps [−η, 1+η] into [0, 1]. η is taken over the
    // band points too: the global segment alone is too coarse near narrow
    // windows and leaves P' slightly negative there.
    double eta = 0.0;
    for (std::size_t i = 0; i < g.xs.size(); ++i)
      eta = std::max(eta, std::abs(ps[i] - g.gx[i]));
    eta *= 1.0 + 1e-9;
    c[0] += eta;
    for (auto &v : c)
      v /= 1.0 + 2.0 * eta;
    for (auto &p : ps)
      p = (p + eta) / (1.0 + 2.0 * eta);
  }
  for (std::size_t i = gs; i < g.xs.size(); ++i)
    gmax = std::max(gmax, std::abs(ps[i]));
  if (r.fix == Fix::Scale && gmax > r.allowed) {
    double s = r.allowed / gmax * (1.0 - 1e-12);
    for (auto &v : c)
      v *= s;
    for (auto &p : ps)
      p *= s;
    gmax *= s;
  }

  Outcome out;
  out.global_bound = gmax;
  out.pass = gmax <= r.allowed + kBoundSlack;
  std::vector<double> worst(r.bands.size(), 0.0);
  for (std::size_t s = 0; s + 2 < g.offsets.size(); ++s) {
    const std::size_t b = g.band_of[s];
    const Band &band = r.bands[b];
    for (std::size_t i = g.offsets[s]; i < g.offsets[s + 1]; ++i) {
      double w = band.kind == Band::Kind::Approximate
                     ? std::abs(ps[i] - g.fx[i])
                     : std::max(band.ymin - ps[i], ps[i] - band.ymax);
      worst[b] = std::max(worst[b], w);
    }
  }
  for (std::size_t b = 0; b < r.bands.size(); ++b) {
    const Band &band = r.bands[b];
    bool ok = band.kind == Band::Kind::Approximate ? worst[b] <= r.epsilon
                                                   : worst[b] <= kRangeSlack;
    if (band.kind == Band::Kind::Approximate)
      out.certified_error = std::max(out.certified_error, worst[b]);
    out.reports.push_back({band, band.kind == Band::Kind::Range ? std::max(0.0, worst[b]) : worst[b], ok});
    out.pass = out.pass && ok;
  }
  out.coeffs = std::move(c);
  return out;
}

std::vector<double> truncated(const std::vector<double> &c, int degree) {
  return std::vector<double>(c.begin(), c.begin() + std::min<std::ptrdiff_t>(degree + 1, static_cast<std::ptrdiff_t>(c.size())));
}

int fit_parity(int d, Parity p) {
  if (p == Parity::Even && d % 2 != 0)
    return d + 1;
  if (p == Parity::Odd && d % 2 == 0)
    return d + 1;
  return d;
}

PolyPtr build(const Recipe &r) {
  const int cap = degree_cap();
  const GridSet screen = make_grids(r, 2001);
  const GridSet full = make_grids(r, kGridPoints);

  int D = fit_parity(std::max(4, static_cast<int>(std::ceil(4.0 * r.formula))), r.parity);
  Outcome best;
  for (;; D = fit_parity(2 * D, r.parity)) {
    if (D > cap)
      throw CertificationError("certification failed for " + r.key + " below degree cap " +
                               std::to_string(cap));
    std::vector<double> coeffs = chebyshev_interpolate(r.surrogate, D, r.parity);
    if (!assess(r, screen, coeffs).pass)
      continue;

    // Smallest truncation that passes the screen, then climb on the full grid.
    int lo = 0, hi = D;
    while (hi - lo > std::max(2, hi / 64)) {
      int mid = fit_parity((lo + hi) / 2, r.parity);
      if (mid >= hi)
        break;
      if (assess(r, screen, truncated(coeffs, mid)).pass)
        hi = mid;
      else
        lo = mid;
    }
    for (;;) {
      best = assess(r, full, truncated(coeffs, hi));
      if (best.pass || hi >= D)
        break;
      hi = fit_parity(std::min(D, hi + std::max(2, hi / 16)), r.parity);
    }
    if (best.pass)
      break;
  }

  auto p = std::make_shared<CertifiedPolynomial>();
  p->chebyshev_coefficients = std::move(best.coeffs);
  while (p->chebyshev_coefficients.size() > 1 && p->chebyshev_coefficients.back() == 0.0)
    p->chebyshev_coefficients.pop_back();
  p->parity = r.parity;
  p->target = r.target;
  p->interval_lo = r.lo;
  p->interval_hi = r.hi;
  p->requested_error = r.epsilon;
  p->certified_error = best.certified_error;
  p->global_bound = best.global_bound;
  p->allowed_bound = r.allowed;
  p->formula_degree = r.formula;
  p->bands = std::move(best.reports);
  return p;
}

std::string make_key(const std::string &family, std::initializer_list<double> params) {
  std::string key = family;
  char buf[40];
  for (double v : params) {
    std::snprintf(buf, sizeof buf, ":%.17g", v);
    key += buf;
  }
  return key;
}

PolyPtr memoized(const std::string &key, const std::function<PolyPtr()> &make) {
  static std::mutex mutex;
  static std::map<std::string, PolyPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end())
      return it->second;
  }
  PolyPtr p = make();
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, p);
  return p;
}

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw ValidationError(msg);
}

// Window parameters: step from (1 − w) ≤ tiny at `floor_x` up to w ≤ small at
// `edge`, with w = bump(x, −t, t, k).
struct Step {
  double t, k;
};

Step step_between(double floor_x, double edge, double small, double tiny) {
  double z1 = erfc_inv(small), z2 = erfc_inv(tiny);
  double k = (z1 + z2) / (edge - floor_x);
  return {edge - z1 / k, k};
}

Recipe indicator_recipe(const std::string &key, double inner, double outer, bool low_is_one,
                        double epsilon) {
  // Transition between |x| = inner and |x| = outer.
  Recipe r;
  r.key = key;
  r.parity = Parity::Even;
  r.epsilon = epsilon;
  r.fix = Fix::UnitInterval;
  r.allowed = 1.0;
  const double half = 0.5 * (outer - inner), mid = 0.5 * (outer + inner);
  const double k = erfc_inv(epsilon / 4.0) / half;
  if (low_is_one) {
    r.surrogate = [=](double x) { return bump(x, -mid, mid, k); };
    r.bands = {{Band::Kind::Approximate, 0.0, inner, 0, 0, true},
               {Band::Kind::Range, outer, 1.0, 0.0, epsilon, true}};
    r.lo = 0.0;
    r.hi = inner;
  } else {
    r.surrogate = [=](double x) { return 1.0 - bump(x, -mid, mid, k); };
    r.bands = {{Band::Kind::Range, 0.0, inner, 0.0, epsilon, true},
               {Band::Kind::Approximate, outer, 1.0, 0, 0, true}};
    r.lo = outer;
    r.hi = 1.0;
  }
  r.target.f = [](double) { return 1.0; };
  r.formula = (1.0 / half) * std::log(1.0 / epsilon);
  return r;
}

} // namespace

// ---------------------------------------------------------------------------
// Families

PolyPtr approx_positive_power(double c, double delta, double epsilon) {
  require(c > 0.0 && c < 1.0, "approx_positive_power: c must lie in (0, 1)");
  require(delta > 0.0 && delta <= 0.5, "approx_positive_power: delta must lie in (0, 1/2]");
  require(epsilon > 0.0 && epsilon <= 0.5, "approx_positive_power: epsilon must lie in (0, 1/2]");
  const std::string key = make_key("pos-power", {c, delta, epsilon});
  return memoized(key, [=] {
    Recipe r;
    r.key = key;
    r.parity = Parity::Even;
    r.epsilon = epsilon;
    r.target = {"half-power", {{"c", c}, {"delta", delta}},
                [c](double x) { return 0.5 * std::pow(x, c); }};
    const double floor_x = delta / 4.0;
    Step s = step_between(floor_x, delta, epsilon / 4.0, epsilon * epsilon);
    r.surrogate = [=](double x) {
      double y = std::max(std::abs(x), floor_x);
      return 0.5 * std::pow(y, c) * (1.0 - bump(x, -s.t, s.t, s.k));
    };
    r.bands = {{Band::Kind::Approximate, delta, 1.0, 0, 0, true}};
    r.lo = delta;
    r.hi = 1.0;
    r.allowed = 1.0;
    r.formula = formula_degree("pos-power", {{"c", c}, {"delta", delta}, {"epsilon", epsilon}});
    return build(r);
  });
}

PolyPtr approx_negative_power(double c, double delta, double epsilon) {
  require(c > 0.0, "approx_negative_power: c must be positive");
  require(delta > 0.0 && delta <= 0.5, "approx_negative_power: delta must lie in (0, 1/2]");
  require(epsilon > 0.0 && epsilon <= 0.5, "approx_negative_power: epsilon must lie in (0, 1/2]");
  const std::string key = make_key("neg-power", {c, delta, epsilon});
  return memoized(key, [=] {
    Recipe r;
    r.key = key;
    r.parity = Parity::Even;
    r.epsilon = epsilon;
    const double scale = 0.5 * std::pow(delta, c);
    r.target = {"scaled-negative-power", {{"c", c}, {"delta", delta}},
                [c, scale](double x) { return scale * std::pow(x, -c); }};
    // Below floor_x the target would exceed 1/√2; the window closes there.
    const double floor_x = delta * std::max(0.5, std::pow(2.0, -1.0 / (2.0 * c)));
    Step s = step_between(floor_x, delta, epsilon / 4.0, epsilon * epsilon);
    r.surrogate = [=](double x) {
      double y = std::max(std::abs(x), floor_x);
      return scale * std::pow(y, -c) * (1.0 - bump(x, -s.t, s.t, s.k));
    };
    r.bands = {{Band::Kind::Approximate, delta, 1.0, 0, 0, true}};
    r.lo = delta;
    r.hi = 1.0;
    r.allowed = 1.0;
    r.formula = formula_degree("neg-power", {{"c", c}, {"delta", delta}, {"epsilon", epsilon}});
    return build(r);
  });
}

PolyPtr approx_threshold(double t, double delta, double epsilon) {
  require(delta > 0.0 && delta < 0.5, "approx_threshold: delta must lie in (0, 1/2)");
  require(epsilon > 0.0 && epsilon < 0.5, "approx_threshold: epsilon must lie in (0, 1/2)");
  require(0.0 < t - delta && t + delta < 1.0, "approx_threshold: need 0 < t-δ < t+δ < 1");
  const std::string key = make_key("threshold", {t, delta, epsilon});
  return memoized(key, [=] {
    Recipe r = indicator_recipe(key, t - delta, t + delta, true, epsilon);
    r.target.name = "threshold";
    r.target.parameters = {{"t", t}, {"delta", delta}};
    r.formula = formula_degree("threshold", {{"t", t}, {"delta", delta}, {"epsilon", epsilon}});
    return build(r);
  });
}

PolyPtr approx_support_indicator(double delta, double epsilon) {
  require(delta > 0.0 && delta <= 0.25, "approx_support_indicator: delta must lie in (0, 1/4]");
  require(epsilon > 0.0 && epsilon <= 0.25, "approx_support_indicator: epsilon must lie in (0, 1/4]");
  const std::string key = make_key("support-indicator", {delta, epsilon});
  return memoized(key, [=] {
    Recipe r = indicator_recipe(key, delta, 2.0 * delta, false, epsilon);
    r.target.name = "support-indicator";
    r.target.parameters = {{"delta", delta}};
    r.formula = formula_degree("support-indicator", {{"delta", delta}, {"epsilon", epsilon}});
    return build(r);
  });
}

PolyPtr approx_interior_indicator(double delta, double epsilon) {
  require(delta > 0.0 && delta <= 0.25, "approx_interior_indicator: delta must lie in (0, 1/4]");
  require(epsilon > 0.0 && epsilon <= 0.25, "approx_interior_indicator: epsilon must lie in (0, 1/4]");
  const std::string key = make_key("interior-indicator", {delta, epsilon});
  return memoized(key, [=] {
    Recipe r = indicator_recipe(key, 1.0 - 2.0 * delta, 1.0 - delta, true, epsilon);
    r.target.name = "interior-indicator";
    r.target.parameters = {{"delta", delta}};
    r.formula = formula_degree("interior-indicator", {{"delta", delta}, {"epsilon", epsilon}});
    return build(r);
  });
}

// ---------------------------------------------------------------------------
// Taylor route

AnalyticFunction analytic_constant(double value) {
  AnalyticFunction f;
  f.name = "constant";
  f.parameters = {{"value", value}};
  f.f = [value](double) { return value; };
  f.taylor = [value](double, int K, double) {
    std::vector<double> a(static_cast<std::size_t>(K + 1), 0.0);
    a[0] = value;
    return a;
  };
  return f;
}

AnalyticFunction analytic_exp(double amp) {
  AnalyticFunction f;
  f.name = "scaled-exp";
  f.parameters = {{"a", amp}};
  f.f = [amp](double x) { return amp * std::exp(x); };
  f.taylor = [amp](double x0, int K, double scale) {
    std::vector<double> a(static_cast<std::size_t>(K + 1));
    double term = amp * std::exp(x0);
    for (int k = 0; k <= K; ++k) {
      a[static_cast<std::size_t>(k)] = term;
      term *= scale / (k + 1);
    }
    return a;
  };
  return f;
}

AnalyticFunction analytic_sqrt_neglog(double delta_prime) {
  const double norm = 1.0 / (2.0 * std::sqrt(std::log(1.0 / delta_prime)));
  AnalyticFunction f;
  f.name = "sqrt-neglog";
  f.parameters = {{"delta_prime", delta_prime}};
  f.f = [norm](double x) { return x >= 1.0 ? 0.0 : norm * std::sqrt(-std::log(x)); };
  f.taylor = [norm](double x0, int K, double scale) {
    if (std::abs(x0 - 0.5) > 1e-15)
      throw ValidationError("sqrt-neglog series is expanded around x0 = 1/2 only");
    // h(z) = −ln(1/2 + scale·z) = ln 2 + Σ_{k≥1} (−1)^k (2·scale)^k z^k / k
    const std::size_t n = static_cast<std::size_t>(K + 1);
    std::vector<double> h(n), s(n, 0.0);
    h[0] = std::log(2.0);
    double pw = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
      pw *= -2.0 * scale;
      h[k] = pw / static_cast<double>(k);
    }
    // Formal composition with √: s² = h.
    s[0] = std::sqrt(h[0]);
    for (std::size_t k = 1; k < n; ++k) {
      double acc = h[k];
      for (std::size_t j = 1; j < k; ++j)
        acc -= s[j] * s[k - j];
      s[k] = acc / (2.0 * s[0]);
    }
    for (auto &v : s)
      v *= norm;
    return s;
  };
  return f;
}

double taylor_coefficient_bound(const AnalyticFunction &f, double x0, double rho, int K) {
  auto a = f.taylor(x0, K, rho);
  double s = 0.0;
  for (double v : a)
    s += std::abs(v);
  return s;
}

namespace {

// Horner in the scaled variable z = (x − x0)/scale.
// Even and odd parts in z² as two independent chains; series here run to
// ~10⁴ terms and a single chain is latency-bound.
double horner(const std::vector<double> &a, double z) {
  const double z2 = z * z;
  double even = 0.0, odd = 0.0;
  std::size_t k = a.size();
  if (k % 2 == 1)
    even = a[--k];
  while (k > 0) {
    odd = odd * z2 + a[k - 1];
    even = even * z2 + a[k - 2];
    k -= 2;
  }
  return even + z * odd;
}

} // namespace

PolyPtr approx_taylor(const AnalyticFunction &f, double x0, double r, double delta, double bound,
                      double epsilon, bool even) {
  require(r >= 0.0 && delta > 0.0, "approx_taylor: need r ≥ 0 and δ > 0");
  require(epsilon > 0.0 && bound > 0.0, "approx_taylor: need ε > 0 and B > 0");
  require(epsilon <= 1.0 / (2.0 * bound) + 1e-12 || f.name == "constant",
          "approx_taylor: need ε ≤ 1/(2B)");
  std::string key = make_key("taylor:" + f.name, {x0, r, delta, bound, epsilon, even ? 1.0 : 0.0});
  for (const auto &[k, v] : f.parameters)
    key += make_key(":" + k, {v});
  return memoized(key, [=] {
    Recipe r_;
    r_.key = key;
    r_.parity = even ? Parity::Even : Parity::None;
    r_.epsilon = epsilon;
    r_.target = {f.name, f.parameters, f.f};
    r_.target.parameters["x0"] = x0;
    r_.target.parameters["r"] = r;
    r_.lo = x0 - r;
    r_.hi = x0 + r;
    r_.allowed = epsilon + bound;
    r_.formula = (1.0 / delta) * std::log(std::max(bound / epsilon, 2.0));

    if (f.name == "constant") {
      // Degree-0 series; nothing to window.
      double v = f.f(0.0);
      auto p = std::make_shared<CertifiedPolynomial>();
      p->chebyshev_coefficients = {v};
      p->parity = Parity::Even;
      p->target = r_.target;
      p->interval_lo = r_.lo;
      p->interval_hi = r_.hi;
      p->requested_error = epsilon;
      p->certified_error = 0.0;
      p->global_bound = std::abs(v);
      p->allowed_bound = r_.allowed;
      p->formula_degree = 0.0;
      p->bands = {{{Band::Kind::Approximate, r_.lo, r_.hi, 0, 0, false}, 0.0, true}};
      return PolyPtr(p);
    }

    // Series in z = (x − x0)/ρ with ρ = r + 0.9δ, truncated so the tail on
    // |x − x0| ≤ r + δ/2 stays below ε/8.
    const double rho = r + 0.9 * delta;
    const double q = (r + 0.5 * delta) / rho;
    int K = static_cast<int>(std::ceil(std::log(8.0 * std::max(bound, 1.0) / (epsilon * (1.0 - q))) /
                                       std::log(1.0 / q)));
    K = std::max(K, 1);
    auto coeffs = f.taylor(x0, K, rho);
    const double clamp_lo = x0 - r - 0.75 * delta, clamp_hi = x0 + r + 0.75 * delta;
    const double kw = erfc_inv(std::min(1.0, epsilon / (8.0 * std::max(bound, 1.0)))) / (0.25 * delta);
    const double wl = x0 - r - 0.25 * delta, wr = x0 + r + 0.25 * delta;
    auto windowed = [=](double x) {
      double xc = std::clamp(x, clamp_lo, clamp_hi);
      return horner(coeffs, (xc - x0) / rho) * bump(x, wl, wr, kw);
    };
    if (even)
      r_.surrogate = [windowed](double x) { return windowed(std::abs(x)); };
    else
      r_.surrogate = windowed;

    r_.bands = {{Band::Kind::Approximate, x0 - r, x0 + r, 0, 0, even}};
    const double out_lo = x0 - r - 0.5 * delta, out_hi = x0 + r + 0.5 * delta;
    if (out_hi < 1.0)
      r_.bands.push_back({Band::Kind::Range, out_hi, 1.0, -epsilon, epsilon, even});
    if (even) {
      if (out_lo > 0.0)
        r_.bands.push_back({Band::Kind::Range, 0.0, out_lo, -epsilon, epsilon, true});
    } else if (out_lo > -1.0) {
      r_.bands.push_back({Band::Kind::Range, -1.0, out_lo, -epsilon, epsilon, false});
    }
    auto p = build(r_);
    auto q_ = std::make_shared<CertifiedPolynomial>(*p);
    q_->target.parameters["taylor_terms"] = K;
    return PolyPtr(q_);
  });
}

PolyPtr approx_sqrt_neglog(double delta_prime, double epsilon) {
  require(delta_prime > 0.0 && delta_prime <= 0.25, "approx_sqrt_neglog: δ' must lie in (0, 1/4]");
  require(epsilon > 0.0 && epsilon <= 0.25, "approx_sqrt_neglog: ε must lie in (0, 1/4]");
  const std::string key = make_key("sqrt-neglog", {delta_prime, epsilon});
  return memoized(key, [=] {
    AnalyticFunction f = analytic_sqrt_neglog(delta_prime);
    const double x0 = 0.5, r = 0.5 - delta_prime, d = 0.5 * delta_prime;
    // B = Σ|a_k|(r+δ)^k, evaluated numerically on a long prefix of the series.
    const int K = static_cast<int>(std::ceil(20.0 / delta_prime)) + 64;
    const double B = taylor_coefficient_bound(f, x0, r + d, K);
    // The Taylor lemma needs ε_T ≤ 1/(2B); the global bound needs ε_T + ‖f·W‖ ≤ 1.
    const double eps_t = std::min(epsilon, 1.0 / (2.0 * B));
    auto base = approx_taylor(f, x0, r, d, B, eps_t, true);
    auto p = std::make_shared<CertifiedPolynomial>(*base);
    p->target.name = "sqrt-neglog";
    p->target.parameters["B"] = B;
    p->requested_error = epsilon;
    p->allowed_bound = 1.0;
    p->formula_degree = formula_degree("sqrt-neglog", {{"delta", delta_prime}, {"epsilon", epsilon}});
    if (p->global_bound > 1.0 + kBoundSlack)
      throw CertificationError("sqrt-neglog polynomial exceeds the unit bound");
    return PolyPtr(p);
  });
}

PolyPtr exact_polynomial(std::vector<double> chebyshev_coefficients, Parity parity,
                         std::string name) {
  auto p = std::make_shared<CertifiedPolynomial>();
  p->chebyshev_coefficients = std::move(chebyshev_coefficients);
  if (!parity_ok(p->chebyshev_coefficients, parity))
    throw ValidationError("exact_polynomial: coefficients do not match the parity tag");
  p->parity = parity;
  auto coeffs = p->chebyshev_coefficients;
  p->target = {std::move(name), {},
               [coeffs](double x) { return kernels::clenshaw(coeffs, {x}, kernels::Exec::Serial)[0]; }};
  p->interval_lo = -1.0;
  p->interval_hi = 1.0;
  auto xs = certification_grid(-1.0, 1.0);
  auto ps = p->evaluate(xs);
  for (double v : ps)
    p->global_bound = std::max(p->global_bound, std::abs(v));
  p->allowed_bound = std::max(1.0, p->global_bound);
  p->bands = {{{Band::Kind::Approximate, -1.0, 1.0, 0, 0, false}, 0.0, true}};
  return p;
}

PolyPtr approx_family(const std::string &family, const std::map<std::string, double> &params) {
  auto get = [&](const char *k) {
    auto it = params.find(k);
    if (it == params.end())
      throw ValidationError("approx-poly: family '" + family + "' needs parameter '" + k + "'");
    return it->second;
  };
  if (family == "pos-power")
    return approx_positive_power(get("c"), get("delta"), get("epsilon"));
  if (family == "neg-power")
    return approx_negative_power(get("c"), get("delta"), get("epsilon"));
  if (family == "threshold")
    return approx_threshold(get("t"), get("delta"), get("epsilon"));
  if (family == "support-indicator")
    return approx_support_indicator(get("delta"), get("epsilon"));
  if (family == "interior-indicator")
    return approx_interior_indicator(get("delta"), get("epsilon"));
  if (family == "sqrt-neglog")
    return approx_sqrt_neglog(get("delta"), get("epsilon"));
  throw ValidationError("approx-poly: unknown family '" + family + "'");
}

double formula_degree(const std::string &family, const std::map<std::string, double> &params) {
  auto get = [&](const char *k) {
    auto it = params.find(k);
    if (it == params.end())
      throw ValidationError("formula_degree: family '" + family + "' needs parameter '" + k + "'");
    return it->second;
  };
  const double delta = get("delta"), epsilon = get("epsilon");
  if (family == "neg-power")
    return ((get("c") + 1.0) / delta) * std::log(1.0 / epsilon);
  if (family == "sqrt-neglog")
    return (1.0 / delta) * std::log(1.0 / (delta * epsilon));
  if (family == "pos-power" || family == "threshold" || family == "support-indicator" ||
      family == "interior-indicator")
    return (1.0 / delta) * std::log(1.0 / epsilon);
  throw ValidationError("formula_degree: unknown family '" + family + "'");
}

} // namespace qbe
