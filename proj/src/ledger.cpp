/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/ledger.hpp"

#include <cmath>
#include <sstream>

namespace qbe {

GateExpression GateExpression::constant(double c) {
  GateExpression e;
  if (c != 0.0)
    e.terms_.push_back({c, {}});
  return e;
}

GateExpression GateExpression::symbol(const std::string &name, double value) {
  GateExpression e;
  e.terms_.push_back({1.0, {{name, 1}}});
  e.bindings_[name] = value;
  return e;
}

GateExpression GateExpression::aligned(const GateExpression &other) {
  GateExpression out = other;
  for (const auto &[name, value] : other.bindings_) {
    auto it = bindings_.find(name);
    if (it == bindings_.end() || it->second == value)
      continue;
    std::string fresh;
    for (int k = 2;; ++k) {
      fresh = name + "#" + std::to_string(k);
      auto f = bindings_.find(fresh);
      if (f == bindings_.end() || f->second == value)
        break;
    }
    out.bindings_.erase(name);
    out.bindings_[fresh] = value;
    for (auto &t : out.terms_) {
      auto p = t.powers.find(name);
      if (p != t.powers.end()) {
        int pw = p->second;
        t.powers.erase(p);
        t.powers[fresh] += pw;
      }
    }
  }
  return out;
}

void GateExpression::simplify() {
  std::map<std::map<std::string, int>, double> merged;
  for (const auto &t : terms_)
    merged[t.powers] += t.coeff;
  terms_.clear();
  for (const auto &[powers, c] : merged)
    if (c != 0.0)
      terms_.push_back({c, powers});
}

GateExpression &GateExpression::operator+=(const GateExpression &other) {
  GateExpression o = aligned(other);
  for (const auto &[k, v] : o.bindings_)
    bindings_[k] = v;
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  simplify();
  return *this;
}

GateExpression GateExpression::operator+(const GateExpression &other) const {
  GateExpression out = *this;
  out += other;
  return out;
}

GateExpression GateExpression::operator*(const GateExpression &other) const {
  GateExpression self = *this;
  GateExpression o = self.aligned(other);
  GateExpression out;
  out.bindings_ = self.bindings_;
  for (const auto &[k, v] : o.bindings_)
    out.bindings_[k] = v;
  for (const auto &a : self.terms_)
    for (const auto &b : o.terms_) {
      Term t{a.coeff * b.coeff, a.powers};
      for (const auto &[s, p] : b.powers)
        t.powers[s] += p;
      out.terms_.push_back(std::move(t));
    }
  out.simplify();
  return out;
}

GateExpression GateExpression::operator*(double s) const {
  GateExpression out = *this;
  for (auto &t : out.terms_)
    t.coeff *= s;
  out.simplify();
  return out;
}

double GateExpression::evaluate() const {
  double total = 0.0;
  for (const auto &t : terms_) {
    double v = t.coeff;
    for (const auto &[s, p] : t.powers)
      v *= std::pow(bindings_.at(s), p);
    total += v;
  }
  return total;
}

GateExpression GateExpression::from_parts(std::vector<Term> terms,
                                         std::map<std::string, double> bindings) {
  GateExpression e;
  e.terms_ = std::move(terms);
  e.bindings_ = std::move(bindings);
  return e;
}

std::string GateExpression::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &t : terms_) {
    if (!first)
      os << " + ";
    first = false;
    bool unit = t.coeff == 1.0 && !t.powers.empty();
    if (!unit)
      os << t.coeff;
    bool lead = !unit;
    for (const auto &[s, p] : t.powers) {
      if (lead)
        os << "*";
      lead = true;
      os << s;
      if (p != 1)
        os << "^" << p;
    }
  }
  return os.str();
}

Cost &Cost::operator+=(const Cost &other) {
  for (const auto &[k, v] : other.queries)
    queries[k] += v;
  controlled += other.controlled;
  gates += other.gates;
  return *this;
}

Cost Cost::operator+(const Cost &other) const {
  Cost out = *this;
  out += other;
  return out;
}

Cost Cost::operator*(double s) const {
  Cost out = *this;
  for (auto &[k, v] : out.queries)
    v *= s;
  out.controlled *= s;
  out.gates = out.gates * s;
  return out;
}

double Cost::queries_to(const std::string &oracle) const {
  auto it = queries.find(oracle);
  return it == queries.end() ? 0.0 : it->second;
}

double Cost::total_queries() const {
  double s = 0.0;
  for (const auto &[k, v] : queries)
    s += v;
  return s;
}

Cost CostNode::total() const {
  Cost sum = local;
  for (const auto &c : children)
    if (c)
      sum += c->total();
  return sum * repeat;
}

CostTree make_cost(std::string label, Cost local, std::vector<CostTree> children,
                   double repeat) {
  auto node = std::make_shared<CostNode>();
  node->label = std::move(label);
  node->local = std::move(local);
  node->children = std::move(children);
  node->repeat = repeat;
  return node;
}

CostTree leaf_query(const std::string &oracle) {
  Cost c;
  c.queries[oracle] = 1.0;
  return make_cost("query " + oracle, c);
}

CostTree empty_cost() { return make_cost("none", Cost{}); }

ResourceLedger ResourceLedger::from(const Cost &cost) {
  ResourceLedger l;
  l.queries_U_rho = cost.queries_to("rho");
  l.queries_U_sigma = cost.queries_to("sigma");
  l.controlled_queries = cost.controlled;
  l.gate_count_expression = cost.gates;
  return l;
}

} // namespace qbe
