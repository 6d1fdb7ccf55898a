/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/schedules.hpp"

#include "qbe/numerics.hpp"
#include "qbe/polyapprox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <vector>

namespace qbe {

namespace {

constexpr double kPrecision = 1e-12; // realized QSVT precision

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw ValidationError(msg);
}

double env_or(const char *name, double fallback) {
  if (const char *v = std::getenv(name)) {
    char *end = nullptr;
    double x = std::strtod(v, &end);
    if (end != v && x > 0.0)
      return x;
  }
  return fallback;
}

// ⌈2π(2√B/ε + 1/√ε)⌉ in floating point (planned ledgers may exceed int64).
double repetitions(double B, double e) {
  return std::ceil(2.0 * std::numbers::pi * (2.0 * std::sqrt(std::max(B, 0.0)) / e +
                                             1.0 / std::sqrt(e)));
}

double fd(const std::string &family, Params p) { return formula_degree(family, p); }

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

enum class Kind { Delta, Epsilon };
struct Clamp {
  std::string key;
  Kind kind;
  double hi;
};

struct ScheduleDef {
  std::string label;
  std::function<Params(double)> form;
  std::function<double(const Params &)> bound;
  std::function<double(const Params &)> upper_bound;
  std::function<double(const Params &)> scale;
  std::function<PlannedCost(const Params &)> planned;
  std::vector<Clamp> clamps;
};

Plan run(const ScheduleDef &spec, double epsilon, const Floors &floors) {
  Plan out;
  out.case_label = spec.label;
  for (int k = 0; k <= kMaxTighteningRounds; ++k) {
    out.theory = spec.form(epsilon / std::pow(2.0, k));
    out.bound_theory = spec.bound(out.theory);
    out.rounds = k;
    if (out.bound_theory <= epsilon * (1.0 + 1e-12))
      break;
  }
  out.realized = out.theory;
  for (const auto &c : spec.clamps) {
    auto it = out.realized.find(c.key);
    if (it == out.realized.end())
      continue;
    double lo = c.kind == Kind::Delta ? floors.delta : floors.epsilon;
    double v = std::clamp(it->second, std::min(lo, c.hi), c.hi);
    if (v != it->second)
      out.clamped = true;
    it->second = v;
  }
  out.bound_realized = spec.bound(out.realized);
  out.upper_bound = spec.upper_bound(out.realized);
  out.scale = spec.scale(out.realized);
  out.epsilon_ae = out.realized.at("epsilon_ae");
  out.planned = spec.planned(out.theory);
  return out;
}

PlannedCost single_oracle(double M, double per_prep, double controlled_per_prep) {
  PlannedCost c;
  c.repetitions = M;
  c.per_prep_rho = per_prep;
  c.queries_rho = M * per_prep;
  c.controlled = M * controlled_per_prep;
  c.multiplicative_total = c.queries_rho;
  return c;
}

} // namespace

Floors Floors::from_env() {
  Floors f;
  f.delta = env_or("QBE_DELTA_FLOOR", f.delta);
  f.epsilon = env_or("QBE_EPSILON_FLOOR", f.epsilon);
  return f;
}

double positive_power_block_error(double c, double delta, double epsilon) {
  const double g = kNominalPowerBound;
  double outer = 1.5 * epsilon;
  double inner = g * epsilon + 0.5 * std::pow(delta, c);
  double middle = epsilon + 0.5 * std::pow(2.0 * delta, c);
  return std::max({outer, inner, middle}) + 2.0 * kPrecision;
}

double positive_power_density_error(double c, double delta, double epsilon) {
  const double g = kNominalPowerBound, cp = 0.5 * (1.0 - c);
  double above = (std::pow(delta, cp) + epsilon) * epsilon;
  double below = delta * (g * g + 0.25);
  return std::max(above, below) + 2.5 * kPrecision;
}

// ---------------------------------------------------------------------------

Plan plan_von_neumann(int rank, double epsilon, const Floors &floors) {
  require(rank >= 1, "von Neumann: rank bound must be at least 1");
  require(epsilon > 0.0 && epsilon < 1.0, "von Neumann: epsilon must lie in (0, 1)");
  const double r = rank;
  ScheduleDef s;
  s.label = "von-neumann";
  // Per eigenvalue of ρ: below δ the error is ≤ δ ln(1/δ)·max(1, 4‖Q‖²); above
  // 1−2δ it is ≤ 5δ + 18 L ε₁²; in between it is ≤ 7 L λ ε₁, summing to 7 L ε₁.
  s.bound = [r](const Params &p) {
    const double d = p.at("delta"), e1 = p.at("epsilon_1"), L = std::log(1.0 / d);
    return 7.0 * L * e1 + 18.0 * L * e1 * e1 + 5.0 * d + 1.1 * r * d * L +
           10.0 * L * r * kPrecision + 4.0 * L * p.at("epsilon_ae");
  };
  s.form = [r](double e) {
    double d = std::min(0.1, e / (2.0 * (1.1 * r + 5.0)));
    for (int i = 0; i < 60; ++i)
      d = std::min(0.1, e / (2.0 * (1.1 * r * std::log(1.0 / d) + 5.0)));
    const double L = std::log(1.0 / d);
    return Params{{"delta", d},
                  {"epsilon_1", std::min(0.1, e / (28.0 * L))},
                  {"epsilon_ae", e / (32.0 * L)}};
  };
  s.upper_bound = [r](const Params &p) {
    return std::log(r) / (4.0 * std::log(1.0 / p.at("delta"))) + 1.0;
  };
  s.scale = [](const Params &p) { return 4.0 * std::log(1.0 / p.at("delta")); };
  s.planned = [s](const Params &p) {
    const double d = p.at("delta"), e1 = p.at("epsilon_1");
    double deg = fd("sqrt-neglog", {{"delta", d}, {"epsilon", e1}}) +
                 fd("interior-indicator", {{"delta", d}, {"epsilon", e1}});
    return single_oracle(repetitions(s.upper_bound(p), p.at("epsilon_ae")), 1.0 + deg, 1.0);
  };
  s.clamps = {{"delta", Kind::Delta, 0.1}, {"epsilon_1", Kind::Epsilon, 0.1}};
  return run(s, epsilon, floors);
}

Plan plan_trace_power(double alpha, int rank, double epsilon, const Floors &floors) {
  require(alpha > 0.0 && std::abs(alpha - 1.0) > 1e-12,
          "trace power: alpha must be positive and different from 1");
  require(rank >= 1, "trace power: rank bound must be at least 1");
  require(epsilon > 0.0 && epsilon < 1.0, "trace power: epsilon must lie in (0, 1)");
  const double r = rank, a = alpha;
  ScheduleDef s;
  if (a < 1.0) {
    s.label = "0<alpha<1";
    const double cp = 0.5 * (1.0 - a);
    s.form = [=](double e) {
      double d = std::min(0.5, std::pow(e / (9.0 * r), 1.0 / a));
      return Params{{"delta", d},
                    {"epsilon_1", std::min(0.1, d)},
                    {"epsilon_ae", e * std::pow(d, 1.0 - a) / 16.0}};
    };
    s.bound = [=](const Params &p) {
      const double d = p.at("delta"), sc = 4.0 * std::pow(d, a - 1.0);
      return r * sc * positive_power_density_error(a, d, p.at("epsilon_1")) +
             sc * p.at("epsilon_ae");
    };
    s.upper_bound = [=](const Params &p) {
      const double d = p.at("delta");
      return std::pow(d * r, 1.0 - a) / 4.0 + r * positive_power_density_error(a, d, p.at("epsilon_1"));
    };
    s.scale = [=](const Params &p) { return 4.0 * std::pow(p.at("delta"), a - 1.0); };
    s.planned = [=](const Params &p) {
      double deg = fd("neg-power", {{"c", cp}, {"delta", p.at("delta")}, {"epsilon", p.at("epsilon_1")}});
      return single_oracle(repetitions(s.upper_bound(p), p.at("epsilon_ae")), 1.0 + deg, 1.0);
    };
    s.clamps = {{"delta", Kind::Delta, 0.5}, {"epsilon_1", Kind::Epsilon, 0.1}};
  } else if (is_integer(a) && static_cast<long>(std::llround(a)) % 2 == 1) {
    s.label = "odd";
    const double beta = (std::round(a) - 1.0) / 2.0;
    s.form = [](double e) { return Params{{"epsilon_ae", e / 2.0}}; };
    s.bound = [](const Params &p) { return p.at("epsilon_ae") + 10.0 * kPrecision; };
    s.upper_bound = [](const Params &) { return 1.0; };
    s.scale = [](const Params &) { return 1.0; };
    s.planned = [=](const Params &p) {
      return single_oracle(repetitions(1.0, p.at("epsilon_ae")), 1.0 + beta, 0.0);
    };
  } else {
    s.label = "alpha>1";
    const double x = (a - 1.0) / 2.0, beta = std::floor(x), c = x - beta;
    s.form = [=](double e) {
      return Params{{"delta", std::min(0.25, 0.5 * std::pow(e / (16.0 * r), 1.0 / c))},
                    {"epsilon_1", std::min(0.25, e / (48.0 * r))},
                    {"epsilon_ae", e / 16.0}};
    };
    auto eb = [=](const Params &p) {
      return positive_power_block_error(c, p.at("delta"), p.at("epsilon_1"));
    };
    // Both ¼ρ^α and the prepared operator have rank ≤ r, so their difference
    // has rank ≤ 2r; its norm is ≤ e(1 + e) for block error e.
    s.bound = [=](const Params &p) {
      double e = eb(p);
      return 8.0 * r * e * (1.0 + e) + 4.0 * p.at("epsilon_ae");
    };
    s.upper_bound = [=](const Params &p) {
      double e = eb(p);
      return 0.25 + 2.0 * r * e * (1.0 + e);
    };
    s.scale = [](const Params &) { return 4.0; };
    s.planned = [=](const Params &p) {
      const double d = p.at("delta"), e1 = p.at("epsilon_1");
      double deg = fd("pos-power", {{"c", c}, {"delta", d}, {"epsilon", e1}}) +
                   fd("support-indicator", {{"delta", d}, {"epsilon", e1}});
      return single_oracle(repetitions(s.upper_bound(p), p.at("epsilon_ae")), 1.0 + beta + deg,
                           2.0);
    };
    s.clamps = {{"delta", Kind::Delta, 0.25}, {"epsilon_1", Kind::Epsilon, 0.25}};
  }
  return run(s, epsilon, floors);
}

Plan plan_trace_distance(double alpha, int rank, double epsilon, const Floors &floors) {
  require(alpha > 0.0, "trace distance: alpha must be positive");
  require(rank >= 1, "trace distance: rank bound must be at least 1");
  require(epsilon > 0.0 && epsilon < 1.0, "trace distance: epsilon must lie in (0, 1)");
  const double r = rank, a = alpha, m = std::min(a, 1.0);
  const bool even = is_integer(a) && static_cast<long>(std::llround(a)) % 2 == 0;
  const double tmax = a >= 1.0 ? 1.0 : std::pow(2.0 * r, 1.0 - a);
  const double f = even ? 0.0 : (a < 1.0 ? a / 2.0 : a / 2.0 - std::floor(a / 2.0));
  const double whole = even ? a / 2.0 : std::floor(a / 2.0);
  // The prepared operator is ≈ ¼|ν|^{α/2}Π₁|ν|^{α/2} when a scale-2 power
  // encoding is used, hence 16/δ₁ in place of 4/δ₁.
  auto sc = [=](double d1) { return (even ? 4.0 : 16.0) / d1; };
  auto u = [](const Params &p) {
    const double d1 = p.at("delta_1"), e1 = p.at("epsilon_1");
    return d1 / 4.0 + e1 * e1 + std::sqrt(d1) * e1;
  };
  auto e2 = [=](const Params &p) {
    return even ? 0.0 : positive_power_block_error(f, p.at("delta_2"), p.at("epsilon_2"));
  };

  ScheduleDef s;
  s.label = even ? "even" : (a >= 1.0 ? "alpha>=1" : "0<alpha<1");
  s.form = [=](double e) {
    double d1 = std::min(0.1, 0.5 * std::pow(e / (8.0 * r), 2.0 / m));
    double e1 = std::min({0.1, e * std::sqrt(d1) / (16.0 * tmax), std::sqrt(d1 / 32.0)});
    Params p{{"delta_1", d1}, {"epsilon_1", e1}, {"epsilon_ae", e / (8.0 * sc(d1))}};
    if (!even) {
      p["delta_2"] = std::min(0.25, 0.5 * std::pow(e / (32.0 * r), 1.0 / f));
      p["epsilon_2"] = std::min(0.25, e / (192.0 * r));
    }
    return p;
  };
  s.bound = [=](const Params &p) {
    const double d1 = p.at("delta_1"), e1 = p.at("epsilon_1"), k = sc(d1);
    double t1 = tmax * (2.0 * e1 + 4.0 * e1 / std::sqrt(d1) + 4.0 * e1 * e1 / d1);
    double t2 = 2.0 * r * std::pow(2.0 * d1, m / 2.0);
    double t3 = k * p.at("epsilon_ae") + k * 2.0 * r * 2.5 * kPrecision;
    double t4 = 0.0;
    if (!even) {
      double e = e2(p);
      t4 = k * 2.0 * r * u(p) * e * (1.0 + e);
    }
    return t1 + t2 + t3 + t4;
  };
  s.upper_bound = [=](const Params &p) {
    if (even)
      return u(p) * tmax + 2.0 * r * 2.5 * kPrecision;
    double e = e2(p);
    return 0.25 * u(p) * tmax + 2.0 * r * (2.5 * kPrecision + u(p) * e * (1.0 + e));
  };
  s.scale = [=](const Params &p) { return sc(p.at("delta_1")); };
  s.planned = [=](const Params &p) {
    const double d1 = p.at("delta_1"), e1 = p.at("epsilon_1");
    double q1 = fd("neg-power", {{"c", 0.5}, {"delta", d1}, {"epsilon", e1}}) +
                fd("support-indicator", {{"delta", d1}, {"epsilon", e1}});
    double q2 = whole;
    double ctrl = 1.0;
    if (!even) {
      const double d2 = p.at("delta_2"), eps2 = p.at("epsilon_2");
      q2 += fd("pos-power", {{"c", f}, {"delta", d2}, {"epsilon", eps2}}) +
            fd("support-indicator", {{"delta", d2}, {"epsilon", eps2}});
      ctrl += 2.0;
    }
    // Π₁ preparation: 1 + q1 uses of U_μ; |ν|^{α/2}: q2 uses of W. Each costs
    // one query to U_ρ and one to U_σ.
    const double per = 1.0 + q1 + q2;
    PlannedCost c;
    c.repetitions = repetitions(s.upper_bound(p), p.at("epsilon_ae"));
    c.per_prep_rho = c.per_prep_sigma = per;
    c.queries_rho = c.queries_sigma = c.repetitions * per;
    c.controlled = c.repetitions * ctrl;
    c.multiplicative_total = 2.0 * c.repetitions * (1.0 + q1) * std::max(1.0, q2);
    return c;
  };
  s.clamps = {{"delta_1", Kind::Delta, 0.1},
              {"epsilon_1", Kind::Epsilon, 0.1},
              {"delta_2", Kind::Delta, 0.25},
              {"epsilon_2", Kind::Epsilon, 0.25}};
  Plan plan = run(s, epsilon, floors);
  // The threshold lemma needs 32ε₁² ≤ δ₁ after clamping as well.
  double &e1 = plan.realized.at("epsilon_1");
  e1 = std::min(e1, std::sqrt(plan.realized.at("delta_1") / 32.0));
  plan.bound_realized = s.bound(plan.realized);
  return plan;
}

Plan plan_fidelity(double alpha, int rank, double epsilon, const Floors &floors) {
  require(alpha > 0.0 && alpha < 1.0, "fidelity: alpha must lie in (0, 1)");
  require(rank >= 1, "fidelity: rank bound must be at least 1");
  require(epsilon > 0.0 && epsilon < 1.0, "fidelity: epsilon must lie in (0, 1)");
  const double r = rank, a = alpha, beta = (1.0 - a) / (2.0 * a);
  const double cp = 0.5 * (1.0 - a);
  ScheduleDef s;
  if (is_integer(beta)) {
    const double b = std::round(beta);
    s.label = "beta-integer";
    s.form = [=](double e) {
      double d = std::min(0.5, std::pow(e / (9.0 * r), 1.0 / a));
      return Params{{"delta", d},
                    {"epsilon_1", std::min(0.1, d)},
                    {"epsilon_ae", e * std::pow(d, 1.0 - a) / 16.0}};
    };
    s.bound = [=](const Params &p) {
      const double d = p.at("delta"), k = 4.0 * std::pow(d, a - 1.0);
      return r * k * positive_power_density_error(a, d, p.at("epsilon_1")) + k * p.at("epsilon_ae");
    };
    s.upper_bound = [=](const Params &p) {
      const double d = p.at("delta");
      return std::pow(d, 1.0 - a) / 4.0 + r * positive_power_density_error(a, d, p.at("epsilon_1"));
    };
    s.scale = [=](const Params &p) { return 4.0 * std::pow(p.at("delta"), a - 1.0); };
    s.planned = [=](const Params &p) {
      double d = fd("neg-power", {{"c", cp}, {"delta", p.at("delta")}, {"epsilon", p.at("epsilon_1")}});
      PlannedCost c;
      c.repetitions = repetitions(s.upper_bound(p), p.at("epsilon_ae"));
      c.per_prep_rho = 1.0 + d;
      c.per_prep_sigma = b * (1.0 + d);
      c.queries_rho = c.repetitions * c.per_prep_rho;
      c.queries_sigma = c.repetitions * c.per_prep_sigma;
      c.controlled = c.repetitions;
      c.multiplicative_total = c.total();
      return c;
    };
    s.clamps = {{"delta", Kind::Delta, 0.5}, {"epsilon_1", Kind::Epsilon, 0.1}};
  } else {
    const double whole = std::floor(beta), frac = beta - whole;
    const double four_a = std::pow(4.0, a);
    s.label = "beta-fractional";
    s.form = [=](double e) {
      double t = std::pow(e / (20.0 * four_a * r), 1.0 / a);
      double d2 = std::min(0.5, std::pow(e / (9.0 * four_a * r), 1.0 / a));
      return Params{{"delta_1", std::min(0.25, 0.5 * std::pow(t, 1.0 / frac))},
                    {"epsilon_1", std::min(0.25, t / 3.0)},
                    {"delta_2", d2},
                    {"epsilon_2", std::min(0.1, d2)},
                    {"epsilon_ae", e * std::pow(d2, 1.0 - a) / (8.0 * 4.0 * four_a)}};
    };
    auto eta = [=](const Params &p) {
      double e1 = positive_power_block_error(frac, p.at("delta_1"), p.at("epsilon_1"));
      return e1 * (1.0 + e1);
    };
    // Weyl-type perturbation: |tr X^α − tr Y^α| ≤ 5r‖X − Y‖^α for rank ≤ r.
    s.bound = [=](const Params &p) {
      const double d2 = p.at("delta_2"), k = 4.0 * std::pow(d2, a - 1.0);
      return four_a * (r * k * positive_power_density_error(a, d2, p.at("epsilon_2")) +
                       5.0 * r * std::pow(eta(p), a)) +
             four_a * k * p.at("epsilon_ae");
    };
    s.upper_bound = [=](const Params &p) {
      const double d2 = p.at("delta_2");
      return std::pow(d2, 1.0 - a) / 4.0 * (1.0 / four_a + 5.0 * r * std::pow(eta(p), a)) +
             r * positive_power_density_error(a, d2, p.at("epsilon_2"));
    };
    s.scale = [=](const Params &p) { return four_a * 4.0 * std::pow(p.at("delta_2"), a - 1.0); };
    s.planned = [=](const Params &p) {
      const double d1 = p.at("delta_1"), e1 = p.at("epsilon_1");
      double q1 = fd("pos-power", {{"c", frac}, {"delta", d1}, {"epsilon", e1}}) +
                  fd("support-indicator", {{"delta", d1}, {"epsilon", e1}}) + whole;
      double q2 = fd("neg-power", {{"c", cp}, {"delta", p.at("delta_2")}, {"epsilon", p.at("epsilon_2")}});
      PlannedCost c;
      c.repetitions = repetitions(s.upper_bound(p), p.at("epsilon_ae"));
      c.per_prep_rho = 1.0 + q2;
      c.per_prep_sigma = (1.0 + q2) * q1;
      c.queries_rho = c.repetitions * c.per_prep_rho;
      c.queries_sigma = c.repetitions * c.per_prep_sigma;
      c.controlled = c.repetitions * (1.0 + 2.0 * (1.0 + q2));
      c.multiplicative_total = c.total();
      return c;
    };
    s.clamps = {{"delta_1", Kind::Delta, 0.25},
                {"epsilon_1", Kind::Epsilon, 0.25},
                {"delta_2", Kind::Delta, 0.5},
                {"epsilon_2", Kind::Epsilon, 0.1}};
  }
  return run(s, epsilon, floors);
}

Plan plan_rank(double delta, double epsilon, double epsilon_prime, const Floors &floors) {
  require(delta > 0.0 && delta <= 0.1, "rank: delta must lie in (0, 1/10]");
  require(epsilon > 0.0 && epsilon_prime > 0.0, "rank: epsilon and epsilon' must be positive");
  ScheduleDef s;
  s.label = "rank";
  // The threshold lemma runs at δ/2 so that its 2δ-support is the δ-support.
  const double dl = delta / 2.0;
  s.form = [=](double) {
    double e1 = std::min({0.1, epsilon * delta / 2.0, std::sqrt(dl / 32.0)});
    return Params{{"delta_lemma", dl}, {"epsilon_1", e1}, {"epsilon_ae", epsilon_prime * delta / 8.0 - kPrecision}};
  };
  // Normalized so that a value ≤ ε means both the multiplicative (2ε₁/δ ≤ ε)
  // and the additive (8(ε_ae + δ_Q)/δ ≤ ε') parts hold.
  s.bound = [=](const Params &p) {
    double mult = 2.0 * p.at("epsilon_1") / delta / epsilon;
    double add = 8.0 * (p.at("epsilon_ae") + kPrecision) / delta / epsilon_prime;
    return epsilon * std::max(mult, add);
  };
  s.upper_bound = [](const Params &) { return 1.0; };
  s.scale = [=](const Params &) { return 8.0 / delta; };
  s.planned = [=](const Params &p) {
    const double e1 = p.at("epsilon_1");
    double deg = fd("neg-power", {{"c", 0.5}, {"delta", dl}, {"epsilon", e1}}) +
                 fd("support-indicator", {{"delta", dl}, {"epsilon", e1}});
    return single_oracle(repetitions(1.0, p.at("epsilon_ae")), 1.0 + deg, 1.0);
  };
  s.clamps = {{"epsilon_1", Kind::Epsilon, std::min(0.1, std::sqrt(dl / 32.0))}};
  return run(s, epsilon, floors);
}

PlannedCost planned_cost(const std::string &quantity, double alpha, int rank, double epsilon) {
  const Floors floors;
  const double r = rank;
  if (quantity == "von-neumann")
    return plan_von_neumann(rank, epsilon, floors).planned;
  if (quantity == "trace-power")
    return plan_trace_power(alpha, rank, epsilon, floors).planned;
  if (quantity == "renyi") {
    double inner = alpha < 1.0 ? (1.0 - alpha) * epsilon
                               : (alpha - 1.0) * std::pow(r, 1.0 - alpha) * epsilon /
                                     (1.0 + (alpha - 1.0) * epsilon);
    return plan_trace_power(alpha, rank, inner, floors).planned;
  }
  if (quantity == "tsallis")
    return plan_trace_power(alpha, rank, std::abs(1.0 - alpha) * epsilon, floors).planned;
  if (quantity == "trace-distance")
    return plan_trace_distance(alpha, rank, epsilon, floors).planned;
  if (quantity == "fidelity")
    return plan_fidelity(alpha, rank, epsilon, floors).planned;
  if (quantity == "rank")
    return plan_rank(0.1, epsilon, epsilon, floors).planned;
  if (quantity == "max-entropy")
    return plan_rank(0.1, epsilon / 4.0, epsilon / 4.0, floors).planned;
  throw ValidationError("planned cost: unknown quantity '" + quantity + "'");
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
  require(x.size() == y.size() && x.size() >= 2, "slope fit: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "slope fit: values must be positive");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double den = n * sxx - sx * sx;
  require(den > 0.0, "slope fit: x values must differ");
  return (n * sxy - sx * sy) / den;
}

} // namespace qbe
