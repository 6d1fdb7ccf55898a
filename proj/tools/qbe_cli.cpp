/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
// qbe: fixture generation, estimation runs, inequality sweeps, polynomial
// dumps and ledger scaling tables.
//
// Exit codes: 0 success, 2 input validation, 3 schedule budget exhausted
// (including polynomial certification at the degree cap), 4 verification
// suite failure.

#include "qbe/estimation.hpp"
#include "qbe/inequalities.hpp"
#include "qbe/io.hpp"
#include "qbe/polyapprox.hpp"
#include "qbe/schedules.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;

constexpr double kSlopeTolR = 0.5;
constexpr double kSlopeTolEps = 0.7;

void emit(const std::string &out, const std::string &text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    qbe::write_text(out, text);
}

int rank_of(const qbe::LoadedState &s) {
  return s.declared_rank > 0 ? s.declared_rank : qbe::delta_rank(s.rho, 1e-10);
}

// --- gen-state ------------------------------------------------------------

struct GenArgs {
  long dimension = 2, rank = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_state(const GenArgs &a) {
  if (a.rank < 1 || a.rank > a.dimension)
    throw qbe::ValidationError("gen-state: need 1 <= rank <= dimension");
  emit(a.out, qbe::dump(qbe::generate_state_spec(a.dimension, a.rank, a.seed)));
  return 0;
}

// --- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string quantity = "von-neumann";
  double alpha = 1.0, epsilon = 0.1, delta = 0.1;
  std::optional<double> kappa;
  std::string state, state2;
  int rank_bound = 0;
  std::string ae_mode = "analytic";
  int median_k = 3;
  std::uint64_t seed = 0;
  std::string out;
  bool require_certified = false;
};

int run_estimate(const EstimateArgs &a) {
  qbe::EstimateRequest req;
  req.quantity = qbe::quantity_from_string(a.quantity);
  req.alpha = a.alpha;
  req.epsilon = a.epsilon;
  req.delta = a.delta;
  req.kappa = a.kappa;

  qbe::LoadedState s1 = qbe::load_state_file(a.state);
  std::optional<qbe::LoadedState> s2;
  std::optional<qbe::PurifiedAccessOracle> sigma;
  if (qbe::needs_sigma(req.quantity)) {
    if (a.state2.empty())
      throw qbe::ValidationError(a.quantity + " needs --state2");
    s2 = qbe::load_state_file(a.state2);
    if (s2->rho.rows() != s1.rho.rows())
      throw qbe::ValidationError("--state and --state2 have different dimensions");
    sigma = qbe::oracle_for(*s2, "sigma");
  }
  req.rank_bound = a.rank_bound > 0 ? a.rank_bound
                                    : std::max(rank_of(s1), s2 ? rank_of(*s2) : 0);

  qbe::AmplitudeEstimatorConfig cfg;
  cfg.mode = qbe::ae_mode_from_string(a.ae_mode);
  cfg.seed = a.seed;
  cfg.median_k = a.median_k;

  qbe::EstimateReport r = qbe::estimate(req, qbe::oracle_for(s1, "rho"), sigma, cfg);
  emit(a.out, qbe::dump(qbe::run_report(r, a.seed)));

  // The theory schedule could not meet ε within the tightening budget.
  if (r.bound_theory > r.target_epsilon * (1.0 + 1e-12)) {
    std::cerr << "qbe: schedule budget exhausted (bound " << r.bound_theory << " > eps "
              << r.target_epsilon << ")\n";
    return kExitBudget;
  }
  if (a.require_certified && !r.bound_certified) {
    std::cerr << "qbe: realized schedule not certified (bound " << r.bound_realized
              << " > eps " << r.target_epsilon << ")\n";
    return kExitBudget;
  }
  return 0;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  int trials = 1000;
  std::uint64_t seed = 0;
  double delta = -1.0;
  std::string out;
};

int run_verify(const VerifyArgs &a) {
  std::vector<std::string> suites;
  if (a.suite == "all")
    suites = qbe::suite_names();
  else
    suites = {a.suite};
  qbe::Json results = qbe::Json::array();
  bool ok = true;
  for (const auto &name : suites) {
    qbe::SuiteResult r = qbe::run_suite(name, a.trials, a.seed, a.delta);
    ok = ok && r.passed();
    results.push_back(qbe::suite_to_json(r));
  }
  qbe::Json doc = {{"tool", "qbe"},      {"version", qbe::kToolVersion}, {"seed", a.seed},
                   {"trials", a.trials}, {"suites", results},            {"passed", ok}};
  emit(a.out, qbe::dump(doc));
  return ok ? 0 : kExitVerify;
}

// --- approx-poly ----------------------------------------------------------

struct PolyArgs {
  std::string family;
  std::vector<std::string> params; // key=value
  std::string format = "json";
  std::string out;
};

qbe::Json band_json(const qbe::BandReport &b) {
  return {{"kind", b.band.kind == qbe::Band::Kind::Approximate ? "approximate" : "range"},
          {"lo", b.band.lo},
          {"hi", b.band.hi},
          {"ymin", b.band.ymin},
          {"ymax", b.band.ymax},
          {"mirror", b.band.mirror},
          {"worst", b.worst},
          {"pass", b.pass}};
}

int run_approx_poly(const PolyArgs &a) {
  std::map<std::string, double> params;
  for (const auto &kv : a.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw qbe::ValidationError("approx-poly: parameter '" + kv + "' is not key=value");
    try {
      params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception &) {
      throw qbe::ValidationError("approx-poly: bad value in '" + kv + "'");
    }
  }
  qbe::PolyPtr p = qbe::approx_family(a.family, params);

  if (a.format == "text") {
    std::ostringstream os;
    os.precision(17);
    os << "# family " << a.family << "\n";
    for (const auto &[k, v] : params)
      os << "# " << k << " " << v << "\n";
    os << "# degree " << p->degree() << "\n# parity " << qbe::to_string(p->parity)
       << "\n# certified_error " << p->certified_error << "\n# global_bound "
       << p->global_bound << "\n# chebyshev coefficients, one per line\n";
    for (double c : p->chebyshev_coefficients)
      os << c << "\n";
    emit(a.out, os.str());
    return 0;
  }

  qbe::Json bands = qbe::Json::array();
  for (const auto &b : p->bands)
    bands.push_back(band_json(b));
  qbe::Json doc = {{"tool", "qbe"},
                   {"version", qbe::kToolVersion},
                   {"family", a.family},
                   {"parameters", params},
                   {"target", p->target.name},
                   {"degree", p->degree()},
                   {"formula_degree", p->formula_degree},
                   {"parity", qbe::to_string(p->parity)},
                   {"interval", {p->interval_lo, p->interval_hi}},
                   {"requested_error", p->requested_error},
                   {"certified_error", p->certified_error},
                   {"global_bound", p->global_bound},
                   {"allowed_bound", p->allowed_bound},
                   {"bands", bands},
                   {"chebyshev_coefficients", p->chebyshev_coefficients}};
  emit(a.out, qbe::dump(doc));
  return 0;
}

// --- bench-scaling --------------------------------------------------------

struct ScalingArgs {
  std::string quantity = "von-neumann";
  double alpha = 1.0;
  std::vector<int> sweep_r{2, 4, 8};
  std::vector<double> sweep_eps{0.1, 0.05, 0.025};
  double epsilon = 0.1; // fixed ε for the r sweep
  int rank = 4;         // fixed r for the ε sweep
  std::string out;
};

qbe::Json cost_row(const qbe::PlannedCost &c, int r, double eps) {
  return {{"r", r},
          {"epsilon", eps},
          {"queries_rho", c.queries_rho},
          {"queries_sigma", c.queries_sigma},
          {"queries_total", c.total()},
          {"multiplicative_total", c.multiplicative_total},
          {"controlled", c.controlled},
          {"repetitions", c.repetitions}};
}

int run_bench_scaling(const ScalingArgs &a) {
  (void)qbe::quantity_from_string(a.quantity);
  if (a.sweep_r.size() < 2 || a.sweep_eps.size() < 2)
    throw qbe::ValidationError("bench-scaling: sweeps need at least two points");

  qbe::Json rows_r = qbe::Json::array(), rows_e = qbe::Json::array();
  std::vector<double> xr, yr, ymr, xe, ye, yme;
  for (int r : a.sweep_r) {
    qbe::PlannedCost c = qbe::planned_cost(a.quantity, a.alpha, r, a.epsilon);
    rows_r.push_back(cost_row(c, r, a.epsilon));
    xr.push_back(r);
    yr.push_back(c.total());
    ymr.push_back(c.multiplicative_total);
  }
  for (double e : a.sweep_eps) {
    qbe::PlannedCost c = qbe::planned_cost(a.quantity, a.alpha, a.rank, e);
    rows_e.push_back(cost_row(c, a.rank, e));
    xe.push_back(1.0 / e);
    ye.push_back(c.total());
    yme.push_back(c.multiplicative_total);
  }
  // Tsallis/Rényi at odd integer α are r-independent by construction; a
  // constant series has slope exactly 0.
  auto slope = [](const std::vector<double> &x, const std::vector<double> &y) {
    for (double v : y)
      if (v != y.front())
        return qbe::loglog_slope(x, y);
    return 0.0;
  };
  qbe::Json doc = {
      {"tool", "qbe"},
      {"version", qbe::kToolVersion},
      {"quantity", a.quantity},
      {"alpha", a.alpha},
      {"counts", "planned ledger: formula degrees at the theory schedule"},
      {"sweep_r", rows_r},
      {"sweep_epsilon", rows_e},
      {"slope_r", slope(xr, yr)},
      {"slope_inv_epsilon", slope(xe, ye)},
      {"slope_r_multiplicative", slope(xr, ymr)},
      {"slope_inv_epsilon_multiplicative", slope(xe, yme)},
      {"slope_tolerance", {{"r", kSlopeTolR}, {"inv_epsilon", kSlopeTolEps}}}};
  emit(a.out, qbe::dump(doc));
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"qbe: density-operator property estimation via block encodings"};
  app.set_version_flag("--version", std::string(qbe::kToolVersion));
  app.require_subcommand(1);

  GenArgs gen;
  auto *c_gen = app.add_subcommand("gen-state", "write a seeded random rank-r density operator");
  c_gen->add_option("--dimension,-n", gen.dimension, "Hilbert-space dimension")->required();
  c_gen->add_option("--rank,-r", gen.rank, "rank")->required();
  c_gen->add_option("--seed", gen.seed, "seed");
  c_gen->add_option("--out,-o", gen.out, "output path (default stdout)");

  EstimateArgs est;
  auto *c_est = app.add_subcommand("estimate", "run an estimator on state file(s)");
  c_est->add_option("--quantity,-q", est.quantity,
                    "von-neumann|renyi|tsallis|trace-power|trace-distance|fidelity|"
                    "max-entropy|rank")
      ->required();
  c_est->add_option("--alpha,-a", est.alpha, "order α");
  c_est->add_option("--epsilon,-e", est.epsilon, "target additive error");
  c_est->add_option("--delta", est.delta, "rank / max-entropy threshold");
  c_est->add_option("--kappa", est.kappa, "spectral lower bound 1/κ on the support");
  c_est->add_option("--state", est.state, "state file")->required();
  c_est->add_option("--state2", est.state2, "second state file (trace distance, fidelity)");
  c_est->add_option("--rank-bound,-r", est.rank_bound,
                    "rank bound (default: declared or numerical rank)");
  c_est->add_option("--ae-mode", est.ae_mode, "analytic|adversarial|sampled")
      ->check(CLI::IsMember({"analytic", "adversarial", "sampled"}));
  c_est->add_option("--median-k", est.median_k, "sampled mode: median of 2k+1 runs");
  c_est->add_option("--seed", est.seed, "seed");
  c_est->add_option("--out,-o", est.out, "output path (default stdout)");
  c_est->add_flag("--require-certified", est.require_certified,
                  "exit 3 unless the realized schedule meets ε");

  VerifyArgs ver;
  auto *c_ver = app.add_subcommand("verify", "seeded sweeps over the operator inequalities");
  c_ver->add_option("--suite", ver.suite, "weyl|truncation|holder|sandwich|all");
  c_ver->add_option("--trials", ver.trials, "trials per suite");
  c_ver->add_option("--seed", ver.seed, "seed");
  c_ver->add_option("--delta", ver.delta, "fixed δ for the truncation suite");
  c_ver->add_option("--out,-o", ver.out, "output path (default stdout)");

  PolyArgs poly;
  auto *c_poly = app.add_subcommand("approx-poly", "construct and certify a polynomial");
  c_poly->add_option("--family", poly.family,
                     "pos-power|neg-power|threshold|support-indicator|interior-indicator|"
                     "sqrt-neglog")
      ->required();
  c_poly->add_option("--param,-p", poly.params, "key=value (c, delta, epsilon, t)");
  c_poly->add_option("--format", poly.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  c_poly->add_option("--out,-o", poly.out, "output path (default stdout)");

  ScalingArgs sc;
  auto *c_sc = app.add_subcommand("bench-scaling", "planned query counts and log-log slopes");
  c_sc->add_option("--quantity,-q", sc.quantity, "quantity")->required();
  c_sc->add_option("--alpha,-a", sc.alpha, "order α");
  c_sc->add_option("--sweep-r", sc.sweep_r, "ranks (ε fixed)")->delimiter(',');
  c_sc->add_option("--sweep-eps", sc.sweep_eps, "ε values (r fixed)")->delimiter(',');
  c_sc->add_option("--epsilon,-e", sc.epsilon, "fixed ε for the r sweep");
  c_sc->add_option("--rank-bound,-r", sc.rank, "fixed r for the ε sweep");
  c_sc->add_option("--out,-o", sc.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*c_gen)
      return run_gen_state(gen);
    if (*c_est)
      return run_estimate(est);
    if (*c_ver)
      return run_verify(ver);
    if (*c_poly)
      return run_approx_poly(poly);
    if (*c_sc)
      return run_bench_scaling(sc);
  } catch (const qbe::ValidationError &e) {
    std::cerr << "qbe: " << e.what() << "\n";
    return kExitValidation;
  } catch (const qbe::CertificationError &e) {
    std::cerr << "qbe: " << e.what() << "\n";
    return kExitBudget;
  } catch (const qbe::BudgetError &e) {
    std::cerr << "qbe: " << e.what() << "\n";
    return kExitBudget;
  } catch (const qbe::Error &e) {
    std::cerr << "qbe: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
