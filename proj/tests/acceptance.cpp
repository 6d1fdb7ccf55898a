/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Exact values always come from the spectral path.

#include "qbe/estimation.hpp"
#include "qbe/inequalities.hpp"
#include "qbe/kernels.hpp"
#include "qbe/polyapprox.hpp"
#include "qbe/schedules.hpp"
#include "qbe/transform.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace qbe;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

PurifiedAccessOracle oracle_of(const Matrix &m, const std::string &name = "rho") {
  return purification_of(SubnormalizedDensityOperator(m), name);
}

Matrix diagonal(const RealVector &d) { return d.cast<cplx>().asDiagonal(); }

// ---------------------------------------------------------------------------
// 1. Polynomial certification

Outcome criterion_1() {
  const auto t0 = Clock::now();
  int built = 0, failed = 0;
  std::ostringstream bad;
  for (double delta : {0.1, 0.05}) {
    for (double eps : {1e-2, 1e-3}) {
      std::vector<std::pair<std::string, std::function<PolyPtr()>>> families = {
          {"pos-power", [=] { return approx_positive_power(0.5, delta, eps); }},
          {"neg-power", [=] { return approx_negative_power(0.5, delta, eps); }},
          {"threshold", [=] { return approx_threshold(0.5, delta, eps); }},
          {"support-indicator", [=] { return approx_support_indicator(delta, eps); }},
          {"interior-indicator", [=] { return approx_interior_indicator(delta, eps); }},
          {"sqrt-neglog", [=] { return approx_sqrt_neglog(delta, eps); }},
      };
      for (auto &[name, make] : families) {
        ++built;
        bool ok = false;
        try {
          PolyPtr p = make();
          ok = p->verify() && p->certified_error <= eps &&
               p->global_bound <= p->allowed_bound + kBoundSlack;
        } catch (const Error &e) {
          bad << " " << name << "(" << e.what() << ")";
        }
        if (!ok) {
          ++failed;
          bad << " " << name << "@(" << delta << "," << eps << ")";
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << built - failed << "/" << built << " certified in " << secs << " s (limit 10 s)"
     << bad.str();
  return {failed == 0 && secs < 10.0, os.str()};
}

// ---------------------------------------------------------------------------
// 2. Block-encoding calculus against direct matrix arithmetic

Outcome criterion_2() {
  double worst = 0.0, worst_unitary = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t s = derive_seed(2024, static_cast<std::uint64_t>(t));
    Rng rng(s);
    const int n = 1 + t % 3; // system dims 2, 4, 8 (products and lcu double it)
    const Eigen::Index N = Eigen::Index(1) << n;
    const Eigen::Index rank = 1 + static_cast<Eigen::Index>(t % std::min<int>(4, int(N)));
    Matrix rho = ginibre_state(N, rank, derive_seed(s, 1));
    Matrix sigma = ginibre_state(N, 1 + (rank % N), derive_seed(s, 2));
    double err = 0.0;
    std::vector<const Matrix *> unitaries;
    switch (t % 4) {
    case 0: { // evolve
      Matrix b = random_contraction(N, N, rng);
      auto v = dilate(b);
      auto e = evolve(oracle_of(rho), v);
      err = (e.encoded() - b * rho * b.adjoint()).norm();
      worst_unitary = std::max(worst_unitary, unitarity_defect(v.unitary()));
      worst_unitary = std::max(worst_unitary, unitarity_defect(e.unitary()));
      break;
    }
    case 1: { // product
      Matrix a = random_contraction(N, N, rng), b = random_contraction(N, N, rng);
      auto p = product(dilate(a), dilate(b));
      err = (p.block() - a * b).norm();
      worst_unitary = std::max(worst_unitary, unitarity_defect(p.unitary()));
      break;
    }
    case 2: { // lcu with complex coefficients
      Vector y(3);
      for (Eigen::Index k = 0; k < 3; ++k)
        y(k) = complex_gaussian(rng);
      Matrix a = random_contraction(N, N, rng), b = random_contraction(N, N, rng),
             c = random_contraction(N, N, rng);
      auto u = lcu(StatePreparationPair::for_coefficients(y), {dilate(a), dilate(b), dilate(c)});
      err = (u.scale() * u.block() - (y(0) * a + y(1) * b + y(2) * c)).norm();
      worst_unitary = std::max(worst_unitary, unitarity_defect(u.unitary()));
      break;
    }
    case 3: { // linear combination of density operators
      RealVector w(2);
      w << std::uniform_real_distribution<double>(0.0, 0.6)(rng),
          std::uniform_real_distribution<double>(0.0, 0.4)(rng);
      auto o = linear_combination_density(w, {oracle_of(rho), oracle_of(sigma, "sigma")});
      err = (o.encoded() - (w(0) * rho + w(1) * sigma)).norm();
      worst_unitary = std::max(worst_unitary, unitarity_defect(o.unitary()));
      auto be = block_encode_density(o);
      err = std::max(err, (be.block() - o.encoded()).norm());
      worst_unitary = std::max(worst_unitary, unitarity_defect(be.unitary()));
      break;
    }
    }
    worst = std::max(worst, err);
  }
  std::ostringstream os;
  os << "200 instances, worst deviation " << worst << " (tol 1e-8), worst unitarity defect "
     << worst_unitary << " (tol 1e-9)";
  return {worst <= 1e-8 && worst_unitary <= 1e-9, os.str()};
}

// ---------------------------------------------------------------------------
// 3. Threshold-projector sandwich

Outcome criterion_3() {
  SuiteResult r = run_suite("sandwich", 100, 3);
  std::ostringstream os;
  os << r.trials << " fixtures, " << r.violations
     << " violations (delta = 0.05, epsilon = 0.01, 32 eps^2 = " << 32 * 0.01 * 0.01 << ")";
  return {r.passed() && r.trials == 100, os.str()};
}

// ---------------------------------------------------------------------------
// 4. Estimator correctness

struct Fixture {
  Matrix rho, sigma;
  int rank;
  double kappa;
};

// N ∈ {2, 4, 8, 16}, r ≤ min(4, N). The κ fixtures have spectrum
// (1 + u_i)/Σ(1 + u_j), so every nonzero eigenvalue is at least 1/(2r).
std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index N = Eigen::Index(2) << (i % 4);
    const int r = static_cast<int>(std::min<Eigen::Index>(N, 1 + (i / 4) % 4));
    const std::uint64_t s = derive_seed(77, static_cast<std::uint64_t>(i));
    Fixture f;
    f.rank = r;
    f.rho = ginibre_state(N, r, derive_seed(s, 1));
    f.sigma = ginibre_state(N, r, derive_seed(s, 2));
    f.kappa = 2.0 * r;
    out.push_back(f);
  }
  return out;
}

Matrix kappa_state(Eigen::Index N, int r, std::uint64_t seed) {
  Rng rng(seed);
  RealVector d = RealVector::Zero(N);
  for (int k = 0; k < r; ++k)
    d(k) = 1.0 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  d /= d.sum();
  Matrix u = haar_unitary(N, rng);
  return u * diagonal(d) * u.adjoint();
}

Outcome criterion_4() {
  const auto t0 = Clock::now();
  const double eps = 0.1;
  const AmplitudeEstimatorConfig cfg{};
  struct Case {
    std::string name;
    std::function<EstimateReport(const Fixture &)> run;
  };
  std::vector<Case> cases = {
      {"von-neumann",
       [&](const Fixture &f) { return estimate_von_neumann(oracle_of(f.rho), f.rank, eps, cfg); }},
  };
  for (double a : {0.5, 2.0, 3.0})
    cases.push_back({"renyi-" + std::to_string(a).substr(0, 3), [=](const Fixture &f) {
                       return estimate_renyi(oracle_of(f.rho), a, f.rank, eps, cfg);
                     }});
  for (double a : {0.5, 3.0})
    cases.push_back({"tsallis-" + std::to_string(a).substr(0, 3), [=](const Fixture &f) {
                       return estimate_tsallis(oracle_of(f.rho), a, f.rank, eps, cfg);
                     }});
  for (double a : {1.0, 2.0})
    cases.push_back({"trace-distance-" + std::to_string(a).substr(0, 3), [=](const Fixture &f) {
                       return estimate_trace_distance(oracle_of(f.rho), oracle_of(f.sigma, "sigma"),
                                                      a, f.rank, eps, cfg);
                     }});
  for (double a : {0.5, 1.0 / 3.0})
    cases.push_back({"fidelity-" + std::to_string(a).substr(0, 4), [=](const Fixture &f) {
                       return estimate_fidelity(oracle_of(f.rho), oracle_of(f.sigma, "sigma"), a,
                                                f.rank, eps, cfg);
                     }});
  cases.push_back({"max-entropy-kappa", [=](const Fixture &f) {
                     Matrix m = kappa_state(f.rho.rows(), f.rank,
                                            derive_seed(static_cast<std::uint64_t>(f.rho.rows()),
                                                        static_cast<std::uint64_t>(f.rank) + 100));
                     return estimate_max_entropy(oracle_of(m), 0.1, eps, cfg, f.kappa);
                   }});

  const auto fx = fixtures();
  std::ostringstream os;
  bool all = true;
  for (const auto &c : cases) {
    int ok = 0;
    double worst = 0.0;
    const auto tc = Clock::now();
    for (const auto &f : fx) {
      try {
        EstimateReport r = c.run(f);
        double e = r.error();
        worst = std::max(worst, e);
        ok += r.true_value && e <= eps;
      } catch (const Error &e) {
        std::printf("  [4] %s: %s\n", c.name.c_str(), e.what());
      }
    }
    all = all && ok == static_cast<int>(fx.size());
    os << " " << c.name << " " << ok << "/20 (worst " << worst << ", " << seconds_since(tc)
       << " s);";
  }
  const double secs = seconds_since(t0);
  os << " total " << secs << " s (limit 120 s)";
  return {all && secs < 120.0, os.str()};
}

// ---------------------------------------------------------------------------
// 5. Statistical mode

Outcome criterion_5() {
  std::ostringstream os;
  bool pass = true;
  for (auto [p, M] : {std::pair<double, std::int64_t>{0.3, 64}, {0.5, 128}}) {
    auto v = kernels::ae_trials(p, M, 5, 500);
    int hit = 0;
    for (double x : v)
      hit += std::abs(x - p) <= ae_error_bound(p, M);
    double freq = hit / 500.0;
    pass = pass && freq >= 0.75;
    os << " AE(p=" << p << ",M=" << M << ") " << freq << ";";
  }
  AmplitudeEstimatorConfig cfg;
  cfg.mode = AeMode::Sampled;
  const double eps = 0.2;
  const auto fx = fixtures();
  int tp = 0, td = 0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    cfg.seed = derive_seed(555, i);
    const auto &f = fx[i];
    auto a = estimate_trace_power(oracle_of(f.rho), 3.0, f.rank, eps, cfg);
    tp += a.error() <= eps;
    auto b = estimate_trace_distance(oracle_of(f.rho), oracle_of(f.sigma, "sigma"), 2.0, f.rank, eps,
                                     cfg);
    td += b.error() <= eps;
  }
  pass = pass && tp >= 18 && td >= 18;
  os << " median trace-power-3 " << tp << "/20; median trace-distance-2 " << td << "/20";
  return {pass, os.str()};
}

// ---------------------------------------------------------------------------
// 6. Inequality lemmas

Outcome criterion_6() {
  std::ostringstream os;
  bool pass = true;
  for (const char *name : {"weyl", "truncation", "holder"}) {
    SuiteResult r = run_suite(name, 1000, 6);
    pass = pass && r.passed() && r.trials == 1000;
    os << " " << name << " " << r.violations << " violations (worst lhs/rhs " << r.worst_ratio
       << ");";
  }
  return {pass, os.str()};
}

// ---------------------------------------------------------------------------
// 7. Ledger exponents

Outcome criterion_7() {
  struct Target {
    std::string quantity;
    double alpha;
    double slope_r, slope_e;
  };
  const std::vector<Target> targets = {
      {"von-neumann", 1.0, 2.0, 2.0},
      {"trace-distance", 1.0, 5.0, 6.0},
      {"fidelity", 0.5, 6.5, 7.5},
  };
  const std::vector<double> rs{2, 4, 8}, es{0.1, 0.05, 0.025};
  std::ostringstream os;
  bool pass = true;
  for (const auto &t : targets) {
    std::vector<double> yr, ye, yr_mul, ye_mul, inv;
    for (double r : rs) {
      auto c = planned_cost(t.quantity, t.alpha, static_cast<int>(r), 0.1);
      yr.push_back(c.total());
      yr_mul.push_back(c.multiplicative_total);
    }
    for (double e : es) {
      auto c = planned_cost(t.quantity, t.alpha, 4, e);
      ye.push_back(c.total());
      ye_mul.push_back(c.multiplicative_total);
      inv.push_back(1.0 / e);
    }
    double sr = loglog_slope(rs, yr), se = loglog_slope(inv, ye);
    bool ok = std::abs(sr - t.slope_r) <= 0.5 && std::abs(se - t.slope_e) <= 0.7;
    pass = pass && ok;
    os << " " << t.quantity << " r-slope " << sr << " (want " << t.slope_r << "±0.5), 1/eps-slope "
       << se << " (want " << t.slope_e << "±0.7)" << (ok ? "" : " MISMATCH");
    if (t.quantity == "trace-distance")
      os << " [multiplied-subroutine count: r-slope " << loglog_slope(rs, yr_mul)
         << ", 1/eps-slope " << loglog_slope(inv, ye_mul) << "; informational]";
    os << ";";
  }
  auto a = planned_cost("tsallis", 3.0, 2, 0.1), b = planned_cost("tsallis", 3.0, 4, 0.1),
       c = planned_cost("tsallis", 3.0, 8, 0.1);
  bool flat = a.total() == b.total() && b.total() == c.total();
  pass = pass && flat;
  os << " tsallis-3 r-slope " << (flat ? "0 exactly" : "nonzero");
  return {pass, os.str()};
}

// ---------------------------------------------------------------------------
// 8. Classical-distribution path

Outcome criterion_8() {
  const double eps = 0.05;
  const AmplitudeEstimatorConfig cfg{};
  std::ostringstream os;
  bool pass = true;
  std::vector<double> queries;
  for (int N : {4, 8}) {
    RealVector p = RealVector::Constant(N, 1.0 / N);
    auto r = estimate_tsallis(distribution_to_purified_oracle(p), 3.0, N, eps, cfg);
    const double expect = (1.0 / (double(N) * N) - 1.0) / (1.0 - 3.0);
    const bool ok = std::abs(r.estimate - expect) <= eps;
    pass = pass && ok;
    queries.push_back(r.ledger.total_queries());
    os << " N=" << N << " estimate " << r.estimate << " (exact " << expect << ") queries "
       << r.ledger.total_queries() << ";";
    if (N == 4)
      os << " [0.375 = (1 - tr rho^2)/2 differs from the alpha = 3 value by "
         << std::abs(0.375 - expect) << "];";
  }
  const bool same = queries[0] == queries[1];
  pass = pass && same;
  os << (same ? " query count independent of N" : " query count depends on N");
  return {pass, os.str()};
}

} // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
      {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
  };
  int failed = 0;
  for (auto &[k, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %d: %s -%s\n", k, o.pass ? "PASS" : "FAIL",
                o.detail.empty() || o.detail[0] == ' ' ? o.detail.c_str()
                                                       : (" " + o.detail).c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
