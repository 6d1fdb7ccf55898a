/*******************************************************************************
 * Copyright (c) 2026 The qbe authors.                                         *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "qbe/io.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qbe;

TEST(Io, MatrixRoundTripIsExact) {
  Matrix m = ginibre_state(4, 3, 2);
  Matrix back = matrix_from_json(Json::parse(dump(matrix_to_json(m))));
  EXPECT_EQ((back - m).norm(), 0.0);
  EXPECT_THROW(matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"data", Json::array()}}),
               ValidationError);
}

TEST(Io, NamedFixtures) {
  for (const auto &name : fixture_names()) {
    Matrix m = named_fixture(name);
    EXPECT_NEAR(m.trace().real(), 1.0, 1e-14) << name;
  }
  EXPECT_LT((named_fixture("bell-reduced") - Matrix::Identity(2, 2) / 2.0).norm(), 1e-15);
  EXPECT_NEAR(named_fixture("diag-3-1")(0, 0).real(), 0.75, 0.0);
  EXPECT_NEAR((named_fixture("orthogonal-pure-pair", 0) * named_fixture("orthogonal-pure-pair", 1))
                  .norm(),
              0.0, 0.0);
  EXPECT_THROW(named_fixture("werner"), ValidationError);
}

TEST(Io, LoadStateKinds) {
  auto a = load_state(Json{{"kind", "named-fixture"}, {"name", "maximally-mixed-4"}});
  EXPECT_EQ(a.rho.rows(), 4);
  EXPECT_EQ(a.declared_rank, 4);
  auto b = load_state(
      Json{{"kind", "spectrum-with-seed"}, {"spectrum", {0.5, 0.5}}, {"dimension", 4}, {"seed", 3}});
  EXPECT_EQ(delta_rank(b.rho, 1e-10), 2);
  auto b2 = load_state(
      Json{{"kind", "spectrum-with-seed"}, {"spectrum", {0.5, 0.5}}, {"dimension", 4}, {"seed", 3}});
  EXPECT_EQ((b.rho - b2.rho).norm(), 0.0);
  auto c = load_state(Json{{"kind", "probability-vector"}, {"probabilities", {0.25, 0.25, 0.5, 0.0}}});
  ASSERT_TRUE(c.distribution);
  EXPECT_NEAR(oracle_for(c).encoded()(2, 2).real(), 0.5, 1e-15);
}

TEST(Io, LoadStateRejectsBadInput) {
  EXPECT_THROW(load_state(Json{{"kind", "hologram"}}), ValidationError);
  EXPECT_THROW(load_state(Json{{"kind", "probability-vector"}, {"probabilities", {0.7, 0.7}}}),
               ValidationError);
  EXPECT_THROW(load_state(Json{{"kind", "named-fixture"}, {"name", "pure-0"}, {"dimension", 4}}),
               ValidationError);
  EXPECT_THROW(load_state(Json::array()), ValidationError);
}

TEST(Io, GenStateIsDeterministicAndHasRequestedRank) {
  std::string a = dump(generate_state_spec(8, 3, 1)), b = dump(generate_state_spec(8, 3, 1));
  EXPECT_EQ(a, b);
  auto s = load_state(Json::parse(a));
  EXPECT_EQ(delta_rank(s.rho, 1e-10), 3);
  auto p = load_state(generate_state_spec(2, 1, 7));
  EXPECT_EQ(delta_rank(p.rho, 1e-10), 1);
  EXPECT_NEAR((p.rho * p.rho).trace().real(), 1.0, 1e-12);
  EXPECT_THROW(generate_state_spec(2, 3, 0), ValidationError);
}

TEST(Io, ReportRoundTripsLosslessly) {
  const Floors floors{1e-2, 1e-3};
  auto rho = purification_of(SubnormalizedDensityOperator(ginibre_state(4, 2, 4)));
  auto sigma = purification_of(SubnormalizedDensityOperator(ginibre_state(4, 2, 5)), "sigma");
  AmplitudeEstimatorConfig cfg;
  cfg.mode = AeMode::Sampled;
  cfg.seed = 2;
  auto r = estimate_trace_distance(rho, sigma, 1.0, 2, 0.1, cfg, floors);
  Json j = report_to_json(r);
  EstimateReport back = report_from_json(Json::parse(dump(j)));
  EXPECT_EQ(dump(report_to_json(back)), dump(j));
  EXPECT_EQ(back.estimate, r.estimate);
  EXPECT_EQ(back.ledger.queries_U_sigma, r.ledger.queries_U_sigma);
  EXPECT_EQ(back.cost->total().total_queries(), r.cost->total().total_queries());
  EXPECT_EQ(back.ledger.gate_count_expression.evaluate(), r.ledger.gate_count_expression.evaluate());
}

TEST(Io, RunReportTimestampPolicy) {
  const Floors floors{1e-2, 1e-3};
  auto rho = purification_of(SubnormalizedDensityOperator(named_fixture("diag-3-1")));
  auto r = estimate_trace_power(rho, 2.0, 2, 0.1, AmplitudeEstimatorConfig{}, floors);
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_TRUE(run_report(r, 5).at("timestamp").is_null());
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  EXPECT_EQ(run_report(r, 5).at("timestamp"), "1970-01-01T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
  Json doc = run_report(r, 5, std::string("t"));
  EXPECT_EQ(doc.at("timestamp"), "t");
  EXPECT_EQ(doc.at("seed"), 5);
  EXPECT_EQ(doc.at("version"), kToolVersion);
  EXPECT_TRUE(doc.at("schedule").contains("realized"));
  EXPECT_TRUE(doc.at("schedule").contains("theory"));
}
