/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// JSON state specs, named fixtures and run reports.
//
// Complex numbers are [re, im] pairs; matrices are row-major arrays of rows
// with explicit "rows"/"cols". Object keys are emitted sorted, so identical
// inputs give byte-identical files.

#include "qbe/estimation.hpp"
#include "qbe/inequalities.hpp"
#include "qbe/numerics.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qbe {

using Json = nlohmann::json;

inline constexpr const char *kToolVersion = "0.1.0";

Json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j);

/// maximally-mixed-{2,4,8}, pure-0, bell-reduced, diag-3-1 and
/// orthogonal-pure-pair (member 0 or 1).
std::vector<std::string> fixture_names();
Matrix named_fixture(const std::string &name, int member = 0);

/// A deserialized state: an operator, plus the distribution when the spec is a
/// probability vector (so the copy-register oracle can be used).
struct LoadedState {
  std::string kind;
  Matrix rho;
  std::optional<RealVector> distribution;
  int declared_rank = 0;
};

LoadedState load_state(const Json &spec);
LoadedState load_state_file(const std::string &path);

/// Oracle for a loaded state, named "rho" or "sigma" in the ledger.
PurifiedAccessOracle oracle_for(const LoadedState &s, const std::string &oracle = "rho");

/// Ginibre state spec (explicit-matrix kind) for gen-state.
Json generate_state_spec(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);

Json gates_to_json(const GateExpression &g);
GateExpression gates_from_json(const Json &j);
Json cost_to_json(const CostTree &t);
CostTree cost_from_json(const Json &j);
Json report_to_json(const EstimateReport &r);
EstimateReport report_from_json(const Json &j);

/// Report file: the report plus tool version, timestamp and seed. The
/// timestamp comes from SOURCE_DATE_EPOCH when set (and is null otherwise)
/// unless `timestamp` is given.
Json run_report(const EstimateReport &r, std::uint64_t seed,
                const std::optional<std::string> &timestamp = std::nullopt);

Json suite_to_json(const SuiteResult &s);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json &j);
void write_text(const std::string &path, const std::string &text);
Json read_json(const std::string &path);

} // namespace qbe
