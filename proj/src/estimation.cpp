/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/estimation.hpp"

#include "qbe/polyapprox.hpp"
#include "qbe/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qbe {

namespace {

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw ValidationError(msg);
}

Matrix density_of(const PurifiedAccessOracle &o) { return hermitian_part(o.encoded()); }

EstimateReport from_plan(Quantity q, double alpha, double epsilon, const Plan &plan,
                         const AmplitudeEstimatorConfig &config) {
  EstimateReport r;
  r.quantity = q;
  r.alpha = alpha;
  r.case_label = plan.case_label;
  r.target_epsilon = epsilon;
  r.parameters_used = plan.realized;
  r.parameters_theory = plan.theory;
  r.upper_bound = plan.upper_bound;
  r.scale = plan.scale;
  r.epsilon_ae = plan.epsilon_ae;
  r.bound_theory = plan.bound_theory;
  r.bound_realized = plan.bound_realized;
  r.bound_certified = plan.certified(epsilon);
  r.rounds = plan.rounds;
  r.clamped = plan.clamped;
  r.planned = plan.planned;
  r.mode = config.mode;
  return r;
}

void add_schedule_notes(EstimateReport &r, const Floors &floors) {
  if (r.clamped) {
    std::ostringstream s;
    s << "schedule clamped at floors (delta >= " << floors.delta
      << ", epsilon >= " << floors.epsilon << "); bound re-evaluated at realized values";
    r.notes.push_back(s.str());
  }
  if (!r.bound_certified)
    r.notes.push_back("realized composite bound exceeds the target epsilon");
}

// Trace estimation on the prepared operator, rescaled.
void run_trace(EstimateReport &r, const PurifiedAccessOracle &prepared,
               const AmplitudeEstimatorConfig &config) {
  TraceEstimate te = trace_estimate(prepared, r.upper_bound, r.epsilon_ae, config);
  r.estimate = r.scale * te.value;
  r.repetitions = te.M;
  r.runs = te.runs;
  r.amplitude = te.exact;
  r.cost = te.cost;
  r.ledger = ResourceLedger::from(te.cost->total());
  switch (config.mode) {
  case AeMode::Sampled:
    r.success_probability_note = median_success_probability(config.median_k);
    r.notes.push_back("median of " + std::to_string(te.runs) + " amplitude-estimation runs");
    break;
  case AeMode::Analytic:
    r.success_probability_note = 1.0;
    break;
  case AeMode::Adversarial:
    r.success_probability_note = 1.0;
    r.notes.push_back("amplitude estimate shifted by its full error bound");
    break;
  }
}

UnitaryBlockEncoding power_product(const UnitaryBlockEncoding &u, int k) {
  UnitaryBlockEncoding out = u;
  for (int i = 1; i < k; ++i)
    out = product(out, u).compacted();
  return out;
}

void check_kappa(const PurifiedAccessOracle &rho, double kappa) {
  require(kappa >= 1.0, "kappa must be at least 1");
  RealVector ev = spectral_decompose(density_of(rho)).eigenvalues;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-10 && ev(i) < (1.0 - 1e-9) / kappa)
      throw ValidationError("kappa assumption violated: eigenvalue " + std::to_string(ev(i)) +
                            " below 1/kappa");
}

double kappa_delta(double kappa) { return std::min(0.1, 1.0 / (2.0 * kappa)); }

EstimateReport exact_rank_report(const PurifiedAccessOracle &rho, double kappa,
                                 const AmplitudeEstimatorConfig &config, const Floors &floors) {
  check_kappa(rho, kappa);
  EstimateReport r =
      estimate_rank(rho, kappa_delta(kappa), 1.0 / (4.0 * kappa), 0.25, config, floors);
  r.estimate = std::round(r.estimate);
  r.target_epsilon = 0.5;
  r.notes.push_back("kappa assumption verified spectrally; estimate rounded to nearest integer");
  return r;
}

// Nominal ν = (ρ − σ)/2 as a scale-1 encoding: the difference pair gives a
// scale-2 encoding of ρ − σ whose block is exactly ν.
UnitaryBlockEncoding half_difference(const PurifiedAccessOracle &rho,
                                     const PurifiedAccessOracle &sigma) {
  UnitaryBlockEncoding w =
      lcu(StatePreparationPair::difference(), {block_encode_density(rho), block_encode_density(sigma)});
  Matrix target = w.target() ? Matrix(*w.target() / 2.0) : w.block();
  UnitaryBlockEncoding nu(w.unitary(), w.system_qubits(), w.ancillas(), 1.0,
                          w.declared_error() / 2.0, w.cost(),
                          {"half difference", {{"scale_in", w.scale()}}});
  nu.declare(w.declared_ancillas());
  nu.with_target(hermitian_part(target), "(rho - sigma)/2");
  return nu.compacted();
}

} // namespace

// ---------------------------------------------------------------------------

EstimateReport estimate_von_neumann(const PurifiedAccessOracle &rho, int rank_bound,
                                    double epsilon, const AmplitudeEstimatorConfig &config,
                                    const Floors &floors) {
  Plan plan = plan_von_neumann(rank_bound, epsilon, floors);
  EstimateReport r = from_plan(Quantity::VonNeumann, 1.0, epsilon, plan, config);
  const double d = plan.realized.at("delta"), e1 = plan.realized.at("epsilon_1");
  PolyPtr q = multiply(approx_sqrt_neglog(d, e1), approx_interior_indicator(d, e1),
                       "sqrt-neglog x interior");
  run_trace(r, qsvt_density(rho, q), config);
  r.true_value = exact_quantity(Quantity::VonNeumann, 1.0, density_of(rho));
  add_schedule_notes(r, floors);
  return r;
}

EstimateReport estimate_rank(const PurifiedAccessOracle &rho, double delta, double epsilon,
                             double epsilon_prime, const AmplitudeEstimatorConfig &config,
                             const Floors &floors) {
  Plan plan = plan_rank(delta, epsilon, epsilon_prime, floors);
  EstimateReport r = from_plan(Quantity::Rank, 0.0, epsilon, plan, config);
  PurifiedAccessOracle pi = eigenvalue_threshold_projector(rho, plan.realized.at("delta_lemma"),
                                                           plan.realized.at("epsilon_1"));
  run_trace(r, pi, config);
  Matrix m = density_of(rho);
  r.true_value = static_cast<double>(delta_rank(m, 1e-10));
  r.parameters_used["delta"] = delta;
  r.parameters_used["epsilon_prime"] = epsilon_prime;
  r.parameters_used["rank_delta_exact"] = static_cast<double>(delta_rank(m, delta));
  add_schedule_notes(r, floors);
  return r;
}

int estimate_exact_rank(const PurifiedAccessOracle &rho, double kappa,
                        const AmplitudeEstimatorConfig &config, const Floors &floors) {
  return static_cast<int>(exact_rank_report(rho, kappa, config, floors).estimate);
}

EstimateReport estimate_max_entropy(const PurifiedAccessOracle &rho, double delta, double epsilon,
                                    const AmplitudeEstimatorConfig &config,
                                    std::optional<double> kappa, const Floors &floors) {
  require(epsilon > 0.0 && epsilon < 1.0, "max entropy: epsilon must lie in (0, 1)");
  if (kappa) {
    check_kappa(rho, *kappa);
    delta = kappa_delta(*kappa);
  }
  EstimateReport r = estimate_rank(rho, delta, epsilon / 4.0, epsilon / 4.0, config, floors);
  const double rank_tilde = r.estimate;
  r.quantity = Quantity::MaxEntropy;
  r.case_label = kappa ? "kappa" : "two-sided";
  r.target_epsilon = epsilon;
  r.estimate = std::log(std::max(rank_tilde, 1.0));
  r.true_value = exact_quantity(Quantity::MaxEntropy, 0.0, density_of(rho));
  r.parameters_used["rank_estimate"] = rank_tilde;
  // The rank plan's bound is normalized to its own ε/4.
  r.bound_theory *= 4.0;
  r.bound_realized *= 4.0;
  r.bound_certified = r.bound_realized <= epsilon * (1.0 + 1e-12);
  if (kappa)
    r.notes.push_back("kappa assumption verified spectrally");
  return r;
}

EstimateReport estimate_trace_power(const PurifiedAccessOracle &rho, double alpha, int rank_bound,
                                    double epsilon, const AmplitudeEstimatorConfig &config,
                                    const Floors &floors) {
  Plan plan = plan_trace_power(alpha, rank_bound, epsilon, floors);
  EstimateReport r = from_plan(Quantity::TracePower, alpha, epsilon, plan, config);
  const Params &p = plan.realized;
  if (plan.case_label == "0<alpha<1") {
    run_trace(r, positive_power_density(rho, alpha, p.at("delta"), p.at("epsilon_1")), config);
  } else if (plan.case_label == "odd") {
    const int beta = static_cast<int>(std::llround((alpha - 1.0) / 2.0));
    run_trace(r, evolve(rho, power_product(block_encode_density(rho), beta)).compacted(), config);
  } else {
    const double x = (alpha - 1.0) / 2.0;
    const int beta = static_cast<int>(std::floor(x));
    const double c = x - beta;
    UnitaryBlockEncoding be = block_encode_density(rho);
    UnitaryBlockEncoding v = positive_power_unitary(be, c, p.at("delta"), p.at("epsilon_1"));
    if (beta > 0)
      v = product(v, power_product(be, beta)).compacted();
    run_trace(r, evolve(rho, v).compacted(), config);
  }
  r.true_value = exact_quantity(Quantity::TracePower, alpha, density_of(rho));
  add_schedule_notes(r, floors);
  return r;
}

EstimateReport estimate_renyi(const PurifiedAccessOracle &rho, double alpha, int rank_bound,
                              double epsilon, const AmplitudeEstimatorConfig &config,
                              std::optional<double> kappa, const Floors &floors) {
  require(alpha >= 0.0 && std::abs(alpha - 1.0) > 1e-12, "Renyi: alpha must be >= 0 and != 1");
  require(epsilon > 0.0 && epsilon < 1.0, "Renyi: epsilon must lie in (0, 1)");
  if (alpha == 0.0) {
    require(kappa.has_value(), "Renyi alpha = 0 requires kappa");
    EstimateReport r = estimate_max_entropy(rho, 0.1, epsilon, config, kappa, floors);
    r.quantity = Quantity::Renyi;
    r.alpha = 0.0;
    r.notes.push_back("alpha = 0 routed to max entropy under the kappa assumption");
    return r;
  }
  const double rr = rank_bound, g = std::pow(rr, 1.0 - alpha);
  double inner;
  std::function<double(double)> map_bound;
  if (alpha < 1.0) {
    inner = (1.0 - alpha) * epsilon;
    map_bound = [alpha](double b) { return b / (1.0 - alpha); };
  } else {
    inner = (alpha - 1.0) * g * epsilon / (1.0 + (alpha - 1.0) * epsilon);
    map_bound = [alpha, g](double b) {
      return b < g ? b / ((alpha - 1.0) * (g - b)) : std::numeric_limits<double>::infinity();
    };
  }
  EstimateReport r = estimate_trace_power(rho, alpha, rank_bound, inner, config, floors);
  const double x = r.estimate;
  const double lo = alpha < 1.0 ? 1.0 : g, hi = alpha < 1.0 ? g : 1.0;
  r.quantity = Quantity::Renyi;
  r.target_epsilon = epsilon;
  r.estimate = std::log(std::clamp(x, lo, hi)) / (1.0 - alpha);
  r.true_value = exact_quantity(Quantity::Renyi, alpha, density_of(rho));
  r.parameters_used["epsilon_inner"] = inner;
  r.parameters_used["trace_power_estimate"] = x;
  r.bound_theory = map_bound(r.bound_theory);
  r.bound_realized = map_bound(r.bound_realized);
  r.bound_certified = r.bound_realized <= epsilon * (1.0 + 1e-12);
  return r;
}

EstimateReport estimate_tsallis(const PurifiedAccessOracle &rho, double alpha, int rank_bound,
                                double epsilon, const AmplitudeEstimatorConfig &config,
                                std::optional<double> kappa, const Floors &floors) {
  require(alpha >= 0.0 && std::abs(alpha - 1.0) > 1e-12, "Tsallis: alpha must be >= 0 and != 1");
  require(epsilon > 0.0 && epsilon < 1.0, "Tsallis: epsilon must lie in (0, 1)");
  if (alpha == 0.0) {
    require(kappa.has_value(), "Tsallis alpha = 0 requires kappa");
    check_kappa(rho, *kappa);
    // rank ≤ κ, so (ε/2κ)·rank + ε/2 ≤ ε.
    EstimateReport r =
        estimate_rank(rho, kappa_delta(*kappa), epsilon / (2.0 * *kappa), epsilon / 2.0, config, floors);
    r.quantity = Quantity::Tsallis;
    r.alpha = 0.0;
    r.target_epsilon = epsilon;
    r.estimate -= 1.0;
    r.true_value = exact_quantity(Quantity::Tsallis, 0.0, density_of(rho));
    r.notes.push_back("alpha = 0 routed to rank - 1 under the kappa assumption (verified)");
    return r;
  }
  const double k = std::abs(1.0 - alpha);
  EstimateReport r = estimate_trace_power(rho, alpha, rank_bound, k * epsilon, config, floors);
  const double x = r.estimate;
  r.quantity = Quantity::Tsallis;
  r.target_epsilon = epsilon;
  r.estimate = (x - 1.0) / (1.0 - alpha);
  r.true_value = exact_quantity(Quantity::Tsallis, alpha, density_of(rho));
  r.parameters_used["epsilon_inner"] = k * epsilon;
  r.parameters_used["trace_power_estimate"] = x;
  r.bound_theory /= k;
  r.bound_realized /= k;
  r.bound_certified = r.bound_realized <= epsilon * (1.0 + 1e-12);
  return r;
}

EstimateReport estimate_trace_distance(const PurifiedAccessOracle &rho,
                                       const PurifiedAccessOracle &sigma, double alpha,
                                       int rank_bound, double epsilon,
                                       const AmplitudeEstimatorConfig &config,
                                       const Floors &floors) {
  require(rho.system_qubits() == sigma.system_qubits(),
          "trace distance: rho and sigma dimensions differ");
  Plan plan = plan_trace_distance(alpha, rank_bound, epsilon, floors);
  EstimateReport r = from_plan(Quantity::TraceDistance, alpha, epsilon, plan, config);
  const Params &p = plan.realized;

  PurifiedAccessOracle mu = linear_combination_density(RealVector(RealVector::Constant(2, 0.5)), {rho, sigma});
  PurifiedAccessOracle pi = eigenvalue_threshold_projector(mu, p.at("delta_1"), p.at("epsilon_1"));
  UnitaryBlockEncoding w = half_difference(rho, sigma);
  UnitaryBlockEncoding v = w;
  if (plan.case_label == "even") {
    v = power_product(w, static_cast<int>(std::llround(alpha / 2.0)));
  } else {
    const int whole = static_cast<int>(std::floor(alpha / 2.0));
    const double f = alpha / 2.0 - whole;
    v = positive_power_unitary(w, f, p.at("delta_2"), p.at("epsilon_2"));
    if (whole > 0)
      v = product(v, power_product(w, whole)).compacted();
  }
  run_trace(r, evolve(pi, v).compacted(), config);
  r.true_value =
      exact_quantity(Quantity::TraceDistance, alpha, density_of(rho), density_of(sigma));
  add_schedule_notes(r, floors);
  return r;
}

EstimateReport estimate_fidelity(const PurifiedAccessOracle &rho,
                                 const PurifiedAccessOracle &sigma, double alpha, int rank_bound,
                                 double epsilon, const AmplitudeEstimatorConfig &config,
                                 const Floors &floors) {
  require(rho.system_qubits() == sigma.system_qubits(),
          "fidelity: rho and sigma dimensions differ");
  Plan plan = plan_fidelity(alpha, rank_bound, epsilon, floors);
  EstimateReport r = from_plan(Quantity::Fidelity, alpha, epsilon, plan, config);
  const Params &p = plan.realized;
  const double beta = (1.0 - alpha) / (2.0 * alpha);
  UnitaryBlockEncoding bs = block_encode_density(sigma);
  if (plan.case_label == "beta-integer") {
    PurifiedAccessOracle eta =
        evolve(rho, power_product(bs, static_cast<int>(std::llround(beta)))).compacted();
    run_trace(r, positive_power_density(eta, alpha, p.at("delta"), p.at("epsilon_1")), config);
  } else {
    const int whole = static_cast<int>(std::floor(beta));
    UnitaryBlockEncoding a1 = positive_power_unitary(bs, beta - whole, p.at("delta_1"), p.at("epsilon_1"));
    if (whole > 0)
      a1 = product(a1, power_product(bs, whole)).compacted();
    PurifiedAccessOracle eta = evolve(rho, a1).compacted();
    run_trace(r, positive_power_density(eta, alpha, p.at("delta_2"), p.at("epsilon_2")), config);
  }
  r.true_value = exact_quantity(Quantity::Fidelity, alpha, density_of(rho), density_of(sigma));
  add_schedule_notes(r, floors);
  return r;
}

PurifiedAccessOracle distribution_to_purified_oracle(const RealVector &p, const std::string &oracle) {
  const Eigen::Index N = p.size();
  require(N >= 1 && is_power_of_two(N), "distribution: length must be a power of two");
  require(p.minCoeff() >= -1e-12, "distribution: probabilities must be non-negative");
  require(std::abs(p.sum() - 1.0) <= 1e-10, "distribution: probabilities must sum to 1");
  const int n = qubits_for(N);
  check_dimension(N * N, "distribution");
  // Prepare Σ√p_i|i⟩ on the system, then copy it into the purifying register.
  Vector state = Vector::Zero(N * N);
  Matrix target = Matrix::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    double q = std::max(p(i), 0.0);
    state(i * N + i) = std::sqrt(q);
    target(i, i) = q;
  }
  PurifiedAccessOracle out(state, n, 0, n, leaf_query(oracle),
                           {"classical distribution", {{"n", double(n)}}});
  out.with_target(target, 0.0);
  return out;
}

EstimateReport estimate(const EstimateRequest &q, const PurifiedAccessOracle &rho,
                        const std::optional<PurifiedAccessOracle> &sigma,
                        const AmplitudeEstimatorConfig &config, const Floors &floors) {
  if (needs_sigma(q.quantity))
    require(sigma.has_value(), to_string(q.quantity) + " requires a second state");
  switch (q.quantity) {
  case Quantity::VonNeumann:
    return estimate_von_neumann(rho, q.rank_bound, q.epsilon, config, floors);
  case Quantity::Renyi:
    return estimate_renyi(rho, q.alpha, q.rank_bound, q.epsilon, config, q.kappa, floors);
  case Quantity::Tsallis:
    return estimate_tsallis(rho, q.alpha, q.rank_bound, q.epsilon, config, q.kappa, floors);
  case Quantity::TracePower:
    return estimate_trace_power(rho, q.alpha, q.rank_bound, q.epsilon, config, floors);
  case Quantity::TraceDistance:
    return estimate_trace_distance(rho, *sigma, q.alpha, q.rank_bound, q.epsilon, config, floors);
  case Quantity::Fidelity:
    return estimate_fidelity(rho, *sigma, q.alpha, q.rank_bound, q.epsilon, config, floors);
  case Quantity::MaxEntropy:
    return estimate_max_entropy(rho, q.delta, q.epsilon, config, q.kappa, floors);
  case Quantity::Rank:
    if (q.kappa)
      return exact_rank_report(rho, *q.kappa, config, floors);
    return estimate_rank(rho, q.delta, q.epsilon, q.epsilon, config, floors);
  }
  throw ValidationError("unknown quantity");
}

} // namespace qbe
