/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/io.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

namespace qbe {

namespace {

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw ValidationError(msg);
}

// JSON has no infinities; they are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }
double number_from(const Json &j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

Json params_to_json(const Params &p) {
  Json j = Json::object();
  for (const auto &[k, v] : p)
    j[k] = number(v);
  return j;
}

Params params_from_json(const Json &j) {
  Params p;
  for (const auto &[k, v] : j.items())
    p[k] = number_from(v);
  return p;
}

Json cost_local_to_json(const Cost &c) {
  return {{"queries", c.queries}, {"controlled", c.controlled}, {"gates", gates_to_json(c.gates)}};
}

Cost cost_local_from_json(const Json &j) {
  Cost c;
  c.queries = j.at("queries").get<std::map<std::string, double>>();
  c.controlled = j.at("controlled").get<double>();
  c.gates = gates_from_json(j.at("gates"));
  return c;
}

Matrix diagonal(const std::vector<double> &d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

} // namespace

Json matrix_to_json(const Matrix &m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      row.push_back({m(i, k).real(), m(i, k).imag()});
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json &j) {
  require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("data"),
          "matrix: expected an object with rows, cols and data");
  const auto rows = j.at("rows").get<Eigen::Index>(), cols = j.at("cols").get<Eigen::Index>();
  const Json &data = j.at("data");
  require(rows > 0 && cols > 0 && data.is_array() && Eigen::Index(data.size()) == rows,
          "matrix: row count does not match");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json &row = data[static_cast<std::size_t>(i)];
    require(row.is_array() && Eigen::Index(row.size()) == cols, "matrix: column count does not match");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json &z = row[static_cast<std::size_t>(k)];
      require(z.is_array() && z.size() == 2, "matrix: entries must be [re, im] pairs");
      m(i, k) = cplx(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

std::vector<std::string> fixture_names() {
  return {"maximally-mixed-2", "maximally-mixed-4", "maximally-mixed-8", "pure-0",
          "bell-reduced",      "diag-3-1",          "orthogonal-pure-pair"};
}

Matrix named_fixture(const std::string &name, int member) {
  for (int n : {2, 4, 8})
    if (name == "maximally-mixed-" + std::to_string(n))
      return Matrix::Identity(n, n) / static_cast<double>(n);
  if (name == "pure-0")
    return diagonal({1.0, 0.0});
  if (name == "bell-reduced") {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    return partial_trace(bell * bell.adjoint(), 2, 2);
  }
  if (name == "diag-3-1")
    return diagonal({0.75, 0.25});
  if (name == "orthogonal-pure-pair") {
    require(member == 0 || member == 1, "orthogonal-pure-pair: member must be 0 or 1");
    return member == 0 ? diagonal({1.0, 0.0}) : diagonal({0.0, 1.0});
  }
  throw ValidationError("unknown fixture '" + name + "'");
}

LoadedState load_state(const Json &spec) {
  require(spec.is_object() && spec.contains("kind"), "state spec: missing 'kind'");
  LoadedState s;
  s.kind = spec.at("kind").get<std::string>();
  if (s.kind == "explicit-matrix") {
    s.rho = matrix_from_json(spec.at("matrix"));
  } else if (s.kind == "spectrum-with-seed") {
    auto spectrum = spec.at("spectrum").get<std::vector<double>>();
    const auto dim = spec.value("dimension", static_cast<Eigen::Index>(spectrum.size()));
    require(dim >= Eigen::Index(spectrum.size()), "state spec: spectrum longer than dimension");
    spectrum.resize(static_cast<std::size_t>(dim), 0.0);
    Rng rng(spec.at("seed").get<std::uint64_t>());
    Matrix u = haar_unitary(dim, rng);
    s.rho = u * diagonal(spectrum) * u.adjoint();
  } else if (s.kind == "named-fixture") {
    s.rho = named_fixture(spec.at("name").get<std::string>(), spec.value("member", 0));
  } else if (s.kind == "probability-vector") {
    auto p = spec.at("probabilities").get<std::vector<double>>();
    require(!p.empty(), "state spec: empty probability vector");
    RealVector v(static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i)
      v(static_cast<Eigen::Index>(i)) = p[i];
    s.distribution = v;
    s.rho = diagonal(p);
  } else {
    throw ValidationError("state spec: unknown kind '" + s.kind + "'");
  }
  if (spec.contains("dimension"))
    require(spec.at("dimension").get<Eigen::Index>() == s.rho.rows(),
            "state spec: dimension field does not match the operator");
  SubnormalizedDensityOperator check(s.rho); // validates PSD, trace, size
  s.rho = check.matrix();
  s.declared_rank = spec.value("declared_rank", delta_rank(s.rho, 1e-10));
  return s;
}

LoadedState load_state_file(const std::string &path) { return load_state(read_json(path)); }

PurifiedAccessOracle oracle_for(const LoadedState &s, const std::string &oracle) {
  if (s.distribution)
    return distribution_to_purified_oracle(*s.distribution, oracle);
  return purification_of(SubnormalizedDensityOperator(s.rho), oracle);
}

Json generate_state_spec(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  require(rank >= 1 && rank <= dim, "gen-state: need 1 <= rank <= dimension");
  check_dimension(dim, "gen-state");
  Matrix rho = ginibre_state(dim, rank, seed);
  return {{"kind", "explicit-matrix"},
          {"dimension", dim},
          {"declared_rank", rank},
          {"generator", {{"name", "ginibre"}, {"seed", seed}}},
          {"matrix", matrix_to_json(rho)}};
}

Json gates_to_json(const GateExpression &g) {
  Json terms = Json::array();
  for (const auto &t : g.terms())
    terms.push_back({{"coeff", t.coeff}, {"powers", t.powers}});
  return {{"expression", g.to_string()},
          {"value", number(g.evaluate())},
          {"terms", std::move(terms)},
          {"bindings", g.bindings()}};
}

GateExpression gates_from_json(const Json &j) {
  std::vector<GateExpression::Term> terms;
  for (const auto &t : j.at("terms"))
    terms.push_back({t.at("coeff").get<double>(), t.at("powers").get<std::map<std::string, int>>()});
  return GateExpression::from_parts(std::move(terms),
                                    j.at("bindings").get<std::map<std::string, double>>());
}

Json cost_to_json(const CostTree &t) {
  if (!t)
    return nullptr;
  Json children = Json::array();
  for (const auto &c : t->children)
    children.push_back(cost_to_json(c));
  return {{"label", t->label},
          {"repeat", t->repeat},
          {"local", cost_local_to_json(t->local)},
          {"children", std::move(children)}};
}

CostTree cost_from_json(const Json &j) {
  if (j.is_null())
    return nullptr;
  std::vector<CostTree> children;
  for (const auto &c : j.at("children"))
    children.push_back(cost_from_json(c));
  return make_cost(j.at("label").get<std::string>(), cost_local_from_json(j.at("local")),
                   std::move(children), j.at("repeat").get<double>());
}

Json report_to_json(const EstimateReport &r) {
  Json j;
  j["quantity"] = to_string(r.quantity);
  j["alpha"] = r.alpha;
  j["case"] = r.case_label;
  j["estimate"] = number(r.estimate);
  j["target_epsilon"] = r.target_epsilon;
  j["true_value"] = r.true_value ? number(*r.true_value) : Json(nullptr);
  j["abs_error"] = r.true_value ? number(r.error()) : Json(nullptr);
  j["parameters_used"] = params_to_json(r.parameters_used);
  j["parameters_theory"] = params_to_json(r.parameters_theory);
  j["upper_bound"] = number(r.upper_bound);
  j["scale"] = number(r.scale);
  j["epsilon_ae"] = number(r.epsilon_ae);
  j["bound_theory"] = number(r.bound_theory);
  j["bound_realized"] = number(r.bound_realized);
  j["bound_certified"] = r.bound_certified;
  j["rounds"] = r.rounds;
  j["clamped"] = r.clamped;
  j["ledger"] = {{"queries_U_rho", r.ledger.queries_U_rho},
                 {"queries_U_sigma", r.ledger.queries_U_sigma},
                 {"controlled_queries", r.ledger.controlled_queries},
                 {"total_queries", r.ledger.total_queries()},
                 {"gate_count_expression", gates_to_json(r.ledger.gate_count_expression)}};
  j["planned_ledger"] = {{"queries_U_rho", number(r.planned.queries_rho)},
                         {"queries_U_sigma", number(r.planned.queries_sigma)},
                         {"controlled_queries", number(r.planned.controlled)},
                         {"repetitions", number(r.planned.repetitions)},
                         {"per_prep_rho", number(r.planned.per_prep_rho)},
                         {"per_prep_sigma", number(r.planned.per_prep_sigma)},
                         {"total_queries", number(r.planned.total())}};
  j["repetitions"] = r.repetitions;
  j["runs"] = r.runs;
  j["amplitude"] = r.amplitude;
  j["mode"] = to_string(r.mode);
  j["success_probability_note"] = r.success_probability_note;
  j["notes"] = r.notes;
  j["cost_tree"] = cost_to_json(r.cost);
  return j;
}

EstimateReport report_from_json(const Json &j) {
  EstimateReport r;
  r.quantity = quantity_from_string(j.at("quantity").get<std::string>());
  r.alpha = j.at("alpha").get<double>();
  r.case_label = j.at("case").get<std::string>();
  r.estimate = number_from(j.at("estimate"));
  r.target_epsilon = j.at("target_epsilon").get<double>();
  if (!j.at("true_value").is_null())
    r.true_value = j.at("true_value").get<double>();
  r.parameters_used = params_from_json(j.at("parameters_used"));
  r.parameters_theory = params_from_json(j.at("parameters_theory"));
  r.upper_bound = number_from(j.at("upper_bound"));
  r.scale = number_from(j.at("scale"));
  r.epsilon_ae = number_from(j.at("epsilon_ae"));
  r.bound_theory = number_from(j.at("bound_theory"));
  r.bound_realized = number_from(j.at("bound_realized"));
  r.bound_certified = j.at("bound_certified").get<bool>();
  r.rounds = j.at("rounds").get<int>();
  r.clamped = j.at("clamped").get<bool>();
  const Json &l = j.at("ledger");
  r.ledger.queries_U_rho = l.at("queries_U_rho").get<double>();
  r.ledger.queries_U_sigma = l.at("queries_U_sigma").get<double>();
  r.ledger.controlled_queries = l.at("controlled_queries").get<double>();
  r.ledger.gate_count_expression = gates_from_json(l.at("gate_count_expression"));
  const Json &p = j.at("planned_ledger");
  r.planned.queries_rho = number_from(p.at("queries_U_rho"));
  r.planned.queries_sigma = number_from(p.at("queries_U_sigma"));
  r.planned.controlled = number_from(p.at("controlled_queries"));
  r.planned.repetitions = number_from(p.at("repetitions"));
  r.planned.per_prep_rho = number_from(p.at("per_prep_rho"));
  r.planned.per_prep_sigma = number_from(p.at("per_prep_sigma"));
  r.repetitions = j.at("repetitions").get<std::int64_t>();
  r.runs = j.at("runs").get<int>();
  r.amplitude = j.at("amplitude").get<double>();
  r.mode = ae_mode_from_string(j.at("mode").get<std::string>());
  r.success_probability_note = j.at("success_probability_note").get<double>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.cost = cost_from_json(j.at("cost_tree"));
  return r;
}

Json run_report(const EstimateReport &r, std::uint64_t seed,
                const std::optional<std::string> &timestamp) {
  Json ts = nullptr;
  if (timestamp) {
    ts = *timestamp;
  } else if (const char *sde = std::getenv("SOURCE_DATE_EPOCH")) {
    std::time_t t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    ts = buf;
  }
  return {{"tool", "qbe"},
          {"version", kToolVersion},
          {"timestamp", ts},
          {"seed", seed},
          {"schedule", {{"realized", params_to_json(r.parameters_used)},
                        {"theory", params_to_json(r.parameters_theory)}}},
          {"report", report_to_json(r)}};
}

Json suite_to_json(const SuiteResult &s) {
  return {{"suite", s.name},
          {"trials", s.trials},
          {"violations", s.violations},
          {"worst_ratio", number(s.worst_ratio)},
          {"passed", s.passed()}};
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
  if (!out)
    throw ValidationError("failed writing '" + path + "'");
}

Json read_json(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception &e) {
    throw ValidationError("invalid JSON in '" + path + "': " + e.what());
  }
}

} // namespace qbe
