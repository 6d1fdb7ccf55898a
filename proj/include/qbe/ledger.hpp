/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qbe {

/// Polynomial over named symbols with the symbols' numeric bindings attached,
/// e.g. (a + 1)·d with a = 3, d = 120.
class GateExpression {
public:
  struct Term {
    double coeff = 0.0;
    std::map<std::string, int> powers;
  };

  GateExpression() = default;
  static GateExpression constant(double c);
  static GateExpression symbol(const std::string &name, double value);
  /// Rebuilds an expression from its terms and bindings (deserialization).
  static GateExpression from_parts(std::vector<Term> terms, std::map<std::string, double> bindings);

  GateExpression &operator+=(const GateExpression &other);
  GateExpression operator+(const GateExpression &other) const;
  GateExpression operator*(const GateExpression &other) const;
  GateExpression operator*(double s) const;

  double evaluate() const;
  std::string to_string() const;
  const std::vector<Term> &terms() const { return terms_; }
  const std::map<std::string, double> &bindings() const { return bindings_; }

private:
  // Returns `other` with any symbol bound to a different value renamed.
  GateExpression aligned(const GateExpression &other);
  void simplify();

  std::vector<Term> terms_;
  std::map<std::string, double> bindings_;
};

/// Resource usage of one construction: queries per named oracle (a query means
/// one use of U or U†), controlled queries, and the gate-count expression.
struct Cost {
  std::map<std::string, double> queries;
  double controlled = 0.0;
  GateExpression gates;

  Cost &operator+=(const Cost &other);
  Cost operator+(const Cost &other) const;
  Cost operator*(double s) const;
  double queries_to(const std::string &oracle) const;
  double total_queries() const;
};

struct CostNode;
using CostTree = std::shared_ptr<const CostNode>;

/// Node of the cost tree: `repeat × (local + Σ children)`.
struct CostNode {
  std::string label;
  double repeat = 1.0;
  Cost local;
  std::vector<CostTree> children;

  Cost total() const;
};

CostTree make_cost(std::string label, Cost local, std::vector<CostTree> children = {},
                   double repeat = 1.0);
CostTree leaf_query(const std::string &oracle);
CostTree empty_cost();

/// Flattened view of a cost tree in terms of U_ρ, U_σ and controlled queries.
struct ResourceLedger {
  double queries_U_rho = 0.0;
  double queries_U_sigma = 0.0;
  double controlled_queries = 0.0;
  GateExpression gate_count_expression;

  static ResourceLedger from(const Cost &cost);
  double total_queries() const { return queries_U_rho + queries_U_sigma; }
};

} // namespace qbe
