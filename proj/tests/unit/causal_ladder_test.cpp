// Copyright 2026 The Algedon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "algedon/causal_ladder.hpp"
#include "algedon/error.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

namespace algedon {
namespace {

// ladder20: supply{low,high} x price{stable,rising} x output{down,up}, 13 calm /
// 7 strike. The expected fractions below were evaluated by hand from the table
// (class counts, smoothed likelihoods with c = 2, and raw frequency
// corrections).
class LadderTableTest : public ::testing::Test {
 protected:
  void SetUp() override { fixture_ = testing::load_fixture("ladder20"); }
  const CountStore& store() const { return fixture_.store(); }
  const AttributeSchema& schema() const { return *fixture_.schema; }
  Evidence ev(const std::vector<std::pair<std::string, std::string>>& pairs) const {
    return Evidence::from_names(schema(), pairs);
  }
  Evidence::Assignment assign(const std::string& a, const std::string& v) const {
    return ev({{a, v}}).last();
  }

  static void expect_scores(const std::vector<double>& actual, const std::vector<double>& expected) {
    ASSERT_EQ(actual.size(), expected.size());
    for (std::size_t i = 0; i < actual.size(); ++i) EXPECT_NEAR(actual[i], expected[i], 1e-12) << "class " << i;
  }

  testing::Fixture fixture_;
};

TEST_F(LadderTableTest, WhatIsEqualsHandPosterior) {
  LadderQuery q;
  q.evidence_x = ev({{"supply", "low"}, {"price", "rising"}});
  const LadderResult r = what_is(store(), q);
  expect_scores(r.raw_scores, {7.0 / 23, 16.0 / 23});
  expect_scores(r.correction_terms, {0.0, 0.0});
  EXPECT_FALSE(r.out_of_range);
}

TEST_F(LadderTableTest, WhatIfBothPolicies) {
  LadderQuery q;
  q.level = LadderLevel::kIntervention;
  q.evidence_x = ev({{"supply", "high"}, {"price", "stable"}});
  q.do_target = assign("supply", "low");
  q.outcome_y = ev({{"output", "down"}});

  // Substituted x = (low, stable): Bayes term 7/11, 4/11.
  // last: P(c & down) / P(price=stable) = (4/20, 5/20) / (11/20).
  LadderResult r = what_if(store(), q);
  expect_scores(r.bayes_terms, {7.0 / 11, 4.0 / 11});
  expect_scores(r.correction_terms, {4.0 / 11, 5.0 / 11});
  expect_scores(r.raw_scores, {1.0, 9.0 / 11});
  EXPECT_FALSE(r.out_of_range);

  // do: denominator P(supply=low) = 9/20.
  q.denominator = DenominatorPolicy::kDoAttribute;
  r = what_if(store(), q);
  expect_scores(r.correction_terms, {4.0 / 9, 5.0 / 9});
  expect_scores(r.raw_scores, {107.0 / 99, 91.0 / 99});
  EXPECT_TRUE(r.out_of_range);
  expect_scores(r.normalized_scores, {107.0 / 198, 91.0 / 198});
}

TEST_F(LadderTableTest, WhyBothPolicies) {
  LadderQuery q;
  q.level = LadderLevel::kRetrospection;
  q.evidence_x = ev({{"supply", "low"}, {"price", "rising"}});
  q.outcome_y = ev({{"price", "rising"}, {"output", "down"}});
  q.do_target = assign("price", "stable");

  // Conditioning y = (stable, down): Bayes term 7/11, 4/11.
  // last: P(c & low & rising) / P(output=down) = (1/20, 4/20) / (9/20).
  LadderResult r = why(store(), q);
  expect_scores(r.bayes_terms, {7.0 / 11, 4.0 / 11});
  expect_scores(r.correction_terms, {1.0 / 9, 4.0 / 9});
  expect_scores(r.raw_scores, {74.0 / 99, 80.0 / 99});

  // do: denominator P(price=stable) = 11/20.
  q.denominator = DenominatorPolicy::kDoAttribute;
  r = why(store(), q);
  expect_scores(r.correction_terms, {1.0 / 11, 4.0 / 11});
  expect_scores(r.raw_scores, {8.0 / 11, 8.0 / 11});
}

TEST_F(LadderTableTest, RetrospectiveBothPolicies) {
  LadderQuery q;
  q.level = LadderLevel::kCombined;
  q.evidence_x = ev({{"supply", "low"}, {"price", "rising"}});
  q.outcome_y = ev({{"output", "down"}});

  // + P(c & down)/P(down) - P(c & low & rising)/P(price=rising).
  LadderResult r = retrospective(store(), q);
  expect_scores(r.bayes_terms, {7.0 / 23, 16.0 / 23});
  ASSERT_EQ(r.correction_parts.size(), 2u);
  expect_scores(r.correction_parts[0].values, {4.0 / 9, 5.0 / 9});
  expect_scores(r.correction_parts[1].values, {-1.0 / 9, -4.0 / 9});
  expect_scores(r.raw_scores, {44.0 / 69, 167.0 / 207});

  // With do(supply=high): x' = (high, rising).
  q.do_target = assign("supply", "high");
  r = retrospective(store(), q);
  expect_scores(r.bayes_terms, {7.0 / 11, 4.0 / 11});
  expect_scores(r.correction_parts[1].values, {-1.0 / 3, -1.0 / 9});
  expect_scores(r.raw_scores, {74.0 / 99, 80.0 / 99});

  q.denominator = DenominatorPolicy::kDoAttribute;
  r = retrospective(store(), q);
  expect_scores(r.correction_parts[1].values, {-3.0 / 11, -1.0 / 11});
  expect_scores(r.raw_scores, {80.0 / 99, 82.0 / 99});
}

TEST_F(LadderTableTest, RetrospectiveLiteralPowerMode) {
  LadderQuery q;
  q.level = LadderLevel::kCombined;
  q.evidence_x = ev({{"supply", "low"}, {"price", "rising"}});
  q.outcome_y = ev({{"output", "down"}});
  q.product = ProductMode::kLiteralPower;
  const LadderResult r = retrospective(store(), q);
  expect_scores(r.bayes_terms, {49.0 / 529, 256.0 / 529});
  expect_scores(r.raw_scores, {676.0 / 1587, 2833.0 / 4761});
}

TEST_F(LadderTableTest, EmptyEvidenceWhatIsGivesPriors) {
  const LadderResult r = what_is(store(), LadderQuery{});
  expect_scores(r.raw_scores, {14.0 / 22, 8.0 / 22});
}

TEST_F(LadderTableTest, PreconditionsAreEnforced) {
  LadderQuery q;
  q.level = LadderLevel::kIntervention;
  q.evidence_x = ev({{"supply", "low"}});
  q.outcome_y = ev({{"output", "down"}});
  try {
    what_if(store(), q);
    FAIL() << "what-if without do";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidQuery);
  }
  q.do_target = assign("price", "rising");
  q.outcome_y.reset();
  EXPECT_THROW(what_if(store(), q), Error);

  LadderQuery w;
  w.level = LadderLevel::kRetrospection;
  w.outcome_y = ev({{"output", "down"}});
  EXPECT_THROW(why(store(), w), Error);  // empty correction context
  w.evidence_x = ev({{"supply", "low"}});
  w.denominator = DenominatorPolicy::kDoAttribute;
  EXPECT_THROW(why(store(), w), Error);  // do policy without a do target

  LadderQuery c;
  c.level = LadderLevel::kCombined;
  c.evidence_x = ev({{"supply", "low"}});
  EXPECT_THROW(retrospective(store(), c), Error);
}

TEST(LadderDenominator, ZeroMarginalIsUndefined) {
  auto schema = testing::make_schema({2, 2}, 2);
  CountStore store(schema);
  store.add(Observation{{0, 0}, 0});
  store.add(Observation{{0, 1}, 1});
  LadderQuery q;
  q.level = LadderLevel::kIntervention;
  q.evidence_x = Evidence{}.add(*schema, 1, 0);
  q.do_target = Evidence::Assignment{0, 1};  // value never observed
  q.outcome_y = Evidence{}.add(*schema, 1, 1);
  q.denominator = DenominatorPolicy::kDoAttribute;
  try {
    what_if(store, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUndefinedDenominator);
    EXPECT_STREQ(e.what(), "undefined correction denominator");
  }
}

class LadderPropertyTest : public ::testing::Test {
 protected:
  struct Case {
    std::shared_ptr<const AttributeSchema> schema;
    CountStore store;
    Evidence x;
  };

  Case random_case() {
    testing::RandomShape shape;
    shape.max_attributes = 4;
    shape.max_values = 3;
    shape.missing_rate = 0.15;
    auto schema = testing::random_schema(rng_, shape);
    CountStore store = testing::build_store(schema, testing::random_rows(rng_, *schema, 5 + rng_() % 40, shape));
    Evidence x;
    for (std::size_t a = 0; a < schema->attribute_count(); ++a) {
      if (rng_() % 4 != 0) x.add(*schema, a, rng_() % schema->domain_size(a));
    }
    return {schema, std::move(store), std::move(x)};
  }

  std::mt19937_64 rng_{8086};
};

TEST_F(LadderPropertyTest, WhatIsIsBitIdenticalToPosterior) {
  for (int i = 0; i < 100; ++i) {
    const Case c = random_case();
    LadderQuery q;
    q.evidence_x = c.x;
    EXPECT_EQ(what_is(c.store, q).raw_scores, posterior(c.store, c.x, Smoothing::kClasses).scores);
  }
}

TEST_F(LadderPropertyTest, RetrospectiveCancelsWhenXEqualsY) {
  for (int i = 0; i < 100; ++i) {
    const Case c = random_case();
    if (c.x.empty()) continue;
    LadderQuery q;
    q.level = LadderLevel::kCombined;
    q.evidence_x = c.x;
    q.outcome_y = c.x;
    LadderResult r;
    try {
      r = retrospective(c.store, q);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kUndefinedDenominator);
      continue;
    }
    LadderQuery base;
    base.evidence_x = c.x;
    const auto expected = what_is(c.store, base).raw_scores;
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(r.raw_scores[k], expected[k], 1e-12);
  }
}

TEST_F(LadderPropertyTest, CompositionOfRetrospectiveTerms) {
  for (int i = 0; i < 100; ++i) {
    const Case c = random_case();
    if (c.x.empty()) continue;
    const auto& schema = *c.schema;
    // Outcome: one random assignment.
    const std::size_t a = rng_() % schema.attribute_count();
    const Evidence y = Evidence{}.add(schema, a, rng_() % schema.domain_size(a));
    LadderQuery q;
    q.level = LadderLevel::kCombined;
    q.evidence_x = c.x;
    q.outcome_y = y;
    testing::RawTable table{c.schema, {}};
    for (const auto& [cell, n] : c.store.cells()) table.rows.insert(table.rows.end(), n, cell);
    if (table.count({y.last()}) == 0 || table.count({c.x.last()}) == 0) continue;
    const LadderResult r = retrospective(c.store, q);
    const auto plus = testing::exact_correction(table, y.assignments(), y.last());
    const auto minus = testing::exact_correction(table, c.x.assignments(), c.x.last());
    const auto bayes = testing::brute_force_posterior(table, c.x.assignments(), Smoothing::kClasses);
    for (std::size_t k = 0; k < schema.class_count(); ++k) {
      EXPECT_NEAR(r.raw_scores[k], testing::to_double(bayes[k] + plus[k] - minus[k]), 1e-12);
    }
  }
}

TEST(ClampNormalize, ClampsNegativesAndRenormalizes) {
  const auto n = clamp_normalize({-0.5, 1.0, 3.0});
  EXPECT_EQ(n, (std::vector<double>{0.0, 0.25, 0.75}));
  EXPECT_TRUE(clamp_normalize({-1.0, 0.0}).empty());
}

TEST(EnvironmentScope, EmptyStoreIsZero) {
  CountStore store(testing::make_schema({2, 2, 2}, 2));
  EXPECT_EQ(environment_scope(store), (EnvironmentScope{0, 0}));
}

TEST(EnvironmentScope, CountsObservedValuesByRole) {
  auto schema = testing::make_schema({2, 2, 2}, 2);
  CountStore store(schema);
  for (std::int32_t v = 0; v < 2; ++v) store.add(Observation{{v, v, v}, 0});
  EXPECT_EQ(environment_scope(store).x_m, 6u);

  const auto f = testing::load_fixture("ladder20");
  EXPECT_EQ(environment_scope(f.store()), (EnvironmentScope{4, 2}));
}

TEST(EnvironmentScope, MatchesRecountAfterStream) {
  std::mt19937_64 rng(31);
  testing::RandomShape shape;
  shape.missing_rate = 0.4;
  auto schema = testing::make_schema({4, 3, 4, 2}, 3);
  EventIngestor ingestor(schema);
  const auto rows = testing::random_rows(rng, *schema, 12, shape);
  std::set<std::pair<std::size_t, std::int32_t>> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ingestor.ingest("u", static_cast<std::int64_t>(i), rows[i]);
    for (std::size_t a = 0; a < rows[i].values.size(); ++a) {
      if (rows[i].values[a] != kMissing) seen.insert({a, rows[i].values[a]});
    }
  }
  EXPECT_EQ(environment_scope(*ingestor.snapshot()).x_m, seen.size());
}

TEST(LadderNames, ParseAliases) {
  EXPECT_EQ(parse_level("association"), LadderLevel::kAssociation);
  EXPECT_EQ(parse_level("what-if"), LadderLevel::kIntervention);
  EXPECT_EQ(parse_level("retrospection"), LadderLevel::kRetrospection);
  EXPECT_EQ(parse_level("combined"), LadderLevel::kCombined);
  EXPECT_THROW(parse_level("how"), Error);
  EXPECT_EQ(parse_policy("do-attribute"), DenominatorPolicy::kDoAttribute);
  EXPECT_EQ(parse_product_mode("power"), ProductMode::kLiteralPower);
}

}  // namespace
}  // namespace algedon
