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

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "algedon/error.hpp"
#include "algedon/ingest.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

namespace algedon {
namespace {

std::shared_ptr<const AttributeSchema> plant_schema() {
  return std::make_shared<const AttributeSchema>(
      std::vector<Attribute>{AttributeSchema::numeric("load", {0.0, 10.0, 5}),
                             AttributeSchema::categorical("mode", {"idle", "run"})},
      std::vector<std::string>{"calm", "strike"}, "strike");
}

TEST(Schema, ValidationRules) {
  using V = std::vector<std::string>;
  const auto cat = [](std::string n, V d) { return AttributeSchema::categorical(std::move(n), std::move(d)); };
  EXPECT_THROW(AttributeSchema({cat("a", {"x"}), cat("a", {"y"})}, V{"c"}, "c"), Error);
  EXPECT_THROW(AttributeSchema({cat("a", {})}, V{"c"}, "c"), Error);
  EXPECT_THROW(AttributeSchema({cat("a", {"x", "x"})}, V{"c"}, "c"), Error);
  EXPECT_THROW(AttributeSchema({cat("a", {"x"})}, V{"c"}, "d"), Error);
  EXPECT_THROW(AttributeSchema({cat("a", {"x"})}, V{}, "c"), Error);
  EXPECT_THROW(AttributeSchema({AttributeSchema::numeric("n", {0.0, 1.0, 1})}, V{"c"}, "c"), Error);
  EXPECT_THROW(AttributeSchema({AttributeSchema::numeric("n", {1.0, 1.0, 3})}, V{"c"}, "c"), Error);
  try {
    AttributeSchema({cat("a", {"x"})}, V{"c", "c"}, "c");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
  const AttributeSchema ok({cat("a", {"x"})}, V{"c", "d"}, "d");
  EXPECT_EQ(ok.distress_index(), 1u);
}

TEST(Discretize, EqualWidthBinsWithSaturation) {
  const auto schema = plant_schema();
  EXPECT_EQ(schema->discretize(0, 3.2), 1u);
  EXPECT_EQ(schema->discretize(0, 10.0), 4u);  // max -> last bin
  EXPECT_EQ(schema->discretize(0, 0.0), 0u);   // min -> bin 0
  EXPECT_EQ(schema->discretize(0, 2.0), 1u);   // half-open [2, 4)
  EXPECT_EQ(schema->discretize(0, 1.9999), 0u);
  EXPECT_EQ(schema->discretize(0, -50.0), 0u);
  EXPECT_EQ(schema->discretize(0, 1e9), 4u);
  EXPECT_EQ(schema->attributes()[0].domain, (std::vector<std::string>{"bin0", "bin1", "bin2", "bin3", "bin4"}));
}

TEST(Discretize, NonFiniteIsRejected) {
  const auto schema = plant_schema();
  EXPECT_THROW(schema->discretize(0, std::numeric_limits<double>::quiet_NaN()), Error);
  EXPECT_THROW(schema->discretize(0, std::numeric_limits<double>::infinity()), Error);
}

TEST(Discretize, MonotoneInRawValue) {
  const auto schema = std::make_shared<const AttributeSchema>(
      std::vector<Attribute>{AttributeSchema::numeric("x", {-3.0, 7.5, 7})}, std::vector<std::string>{"c"}, "c");
  std::size_t previous = 0;
  for (double x = -5.0; x <= 9.0; x += 0.01) {
    const std::size_t bin = schema->discretize(0, x);
    EXPECT_GE(bin, previous);
    EXPECT_LT(bin, 7u);
    previous = bin;
  }
}

TEST(Resolve, NumbersStringsAndBinLabels) {
  const auto schema = plant_schema();
  EXPECT_EQ(schema->resolve(0, RawValue{7.0}), 3u);
  EXPECT_EQ(schema->resolve(0, RawValue{std::string("7.0")}), 3u);
  EXPECT_EQ(schema->resolve(0, RawValue{std::string("bin2")}), 2u);
  EXPECT_EQ(schema->resolve(1, RawValue{std::string("run")}), 1u);
  EXPECT_THROW(schema->resolve(1, RawValue{1.0}), Error);
  EXPECT_THROW(schema->resolve(0, RawValue{std::string("heavy")}), Error);
}

TEST(IngestEvent, LabeledAndUnlabeledCounterSemantics) {
  EventIngestor ingestor(plant_schema());
  ingestor.ingest(EventRecord{"p1", 0, {{"load", 3.2}, {"mode", std::string("run")}}, "strike"});
  auto s = ingestor.snapshot();
  EXPECT_EQ(s->class_count(1), 1u);
  EXPECT_EQ(s->joint_count(0, 1, 1), 1u);
  EXPECT_EQ(s->joint_count(1, 1, 1), 1u);

  ingestor.ingest(EventRecord{"p1", 1, {{"mode", std::string("idle")}}, std::nullopt});
  s = ingestor.snapshot();
  EXPECT_EQ(s->total_events(), 2u);
  EXPECT_EQ(s->labeled_events(), 1u);
  EXPECT_EQ(s->class_counts(), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_EQ(s->value_marginal(1, 0), 1u);
  EXPECT_EQ(s->joint_count(1, 0, 0) + s->joint_count(1, 0, 1), 0u);
}

TEST(IngestEvent, RejectedEventsLeaveStoreIdentical) {
  EventIngestor ingestor(plant_schema());
  ingestor.ingest(EventRecord{"p1", 100, {{"load", 1.0}}, "calm"});
  const auto before = ingestor.snapshot();
  const CountStore copy = *before;

  const std::vector<EventRecord> bad = {
      {"p1", 200, {{"load", 1.0}}, "riot"},                                   // unknown class
      {"p1", 200, {{"speed", 1.0}}, "calm"},                                  // unknown attribute
      {"p1", 200, {{"mode", std::string("off")}}, "calm"},                    // value outside domain
      {"p1", 200, {{"load", std::nan("")}}, "calm"},                          // non-finite
      {"p1", 200, {{"mode", std::string("run")}, {"mode", std::string("idle")}}, "calm"},  // duplicate
      {"p1", 99, {{"load", 1.0}}, "calm"},                                    // out of order
  };
  for (const EventRecord& rec : bad) {
    EXPECT_THROW(ingestor.ingest(rec), Error);
    EXPECT_TRUE(*ingestor.snapshot() == copy);
  }
  try {
    ingestor.ingest(bad.back());
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOutOfOrder);
  }
  // Equal timestamps are allowed; other units have their own clocks.
  EXPECT_NO_THROW(ingestor.ingest(EventRecord{"p1", 100, {{"load", 2.0}}, "calm"}));
  EXPECT_NO_THROW(ingestor.ingest(EventRecord{"p2", 5, {{"load", 2.0}}, "calm"}));
}

TEST(Snapshot, IsImmutableAndStable) {
  EventIngestor ingestor(plant_schema());
  ingestor.ingest(EventRecord{"p1", 0, {{"load", 1.0}}, "calm"});
  const auto a = ingestor.snapshot();
  const auto b = ingestor.snapshot();
  EXPECT_TRUE(*a == *b);
  ingestor.ingest(EventRecord{"p1", 1, {{"load", 9.0}}, "strike"});
  EXPECT_EQ(a->total_events(), 1u);
  EXPECT_EQ(ingestor.snapshot()->total_events(), 2u);
}

TEST(Snapshot, EqualsBatchRecountAtEachOffset) {
  std::mt19937_64 rng(5150);
  testing::RandomShape shape;
  shape.missing_rate = 0.2;
  shape.unlabeled_rate = 0.2;
  auto schema = testing::make_schema({3, 2, 4}, 3);
  const auto rows = testing::random_rows(rng, *schema, 300, shape);
  EventIngestor ingestor(schema);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ingestor.ingest("u" + std::to_string(i % 3), static_cast<std::int64_t>(i / 3), rows[i]);
    if (i % 37 == 0) {
      const std::vector<Observation> prefix(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(i + 1));
      EXPECT_EQ(testing::compare_with_recount(*ingestor.snapshot(), prefix), "");
    }
  }
  EXPECT_EQ(testing::compare_with_recount(*ingestor.snapshot(), rows), "");
}

TEST(IngestFile, ToyFileMatchesHandTally) {
  const auto f = testing::load_fixture("toy10");
  EXPECT_EQ(f.ingested.stats.accepted, 10u);
  EXPECT_EQ(f.ingested.stats.rejected, 0u);
  const CountStore& s = f.store();
  const auto& schema = *f.schema;
  const auto w = schema.attribute_index("weather");
  const auto sh = schema.attribute_index("shift");
  const auto rain = schema.value_index(w, "rain");
  const auto night = schema.value_index(sh, "night");
  const auto calm = schema.class_index("calm");
  const auto strike = schema.class_index("strike");
  EXPECT_EQ(s.class_count(calm), 6u);
  EXPECT_EQ(s.class_count(strike), 4u);
  EXPECT_EQ(s.value_marginal(w, rain), 5u);
  EXPECT_EQ(s.joint_count(w, rain, strike), 3u);
  EXPECT_EQ(s.joint_count(w, rain, calm), 2u);
  EXPECT_EQ(s.joint_count(w, 1 - rain, strike), 1u);
  EXPECT_EQ(s.value_marginal(sh, night), 5u);
  EXPECT_EQ(s.joint_count(sh, night, strike), 3u);
  EXPECT_EQ(s.joint_count(sh, night, calm), 2u);
}

TEST(IngestFile, EmptyFile) {
  const auto schema = load_schema(testing::data_path("toy10.schema.json"));
  const IngestResult r = ingest_file(testing::data_path("empty.events.jsonl"), schema);
  EXPECT_EQ(r.stats.accepted, 0u);
  EXPECT_EQ(r.store->total_events(), 0u);
}

TEST(IngestFile, MalformedLineIsRejectedNotFatal) {
  const auto schema = load_schema(testing::data_path("toy10.schema.json"));
  const IngestResult r = ingest_file(testing::data_path("mixed.events.jsonl"), schema);
  EXPECT_EQ(r.stats.accepted, 4u);
  EXPECT_EQ(r.stats.rejected, 1u);
  ASSERT_EQ(r.stats.reject_reasons.size(), 1u);
  EXPECT_EQ(r.stats.reject_reasons[0].line, 3u);
  EXPECT_NE(r.stats.reject_reasons[0].reason.find("hail"), std::string::npos);
  EXPECT_EQ(r.records.size(), 4u);
}

TEST(IngestFile, BadJsonAndUnknownFieldsAreRejected) {
  testing::TempDir dir("ingest");
  const auto path = dir.path() / "events.jsonl";
  std::ofstream(path) << "{\"unit\":\"a\",\"ts\":1,\"values\":{\"weather\":\"sun\"},\"label\":\"calm\"}\n"
                      << "not json\n"
                      << "{\"unit\":\"a\",\"ts\":2,\"values\":{},\"colour\":\"red\"}\n"
                      << "{\"unit\":\"a\",\"ts\":2.5,\"values\":{}}\n"
                      << "{\"unit\":\"a\",\"ts\":0,\"values\":{}}\n"
                      << "{\"unit\":\"a\",\"ts\":3,\"values\":{\"shift\":\"day\"}}\n";
  const auto schema = load_schema(testing::data_path("toy10.schema.json"));
  const IngestResult r = ingest_file(path, schema);
  EXPECT_EQ(r.stats.accepted, 2u);
  EXPECT_EQ(r.stats.rejected, 4u);
  EXPECT_EQ(r.stats.reject_reasons[3].line, 5u);
  EXPECT_NE(r.stats.reject_reasons[3].reason.find("out-of-order"), std::string::npos);
}

TEST(IngestFile, UnreadableFileIsIoError) {
  const auto schema = load_schema(testing::data_path("toy10.schema.json"));
  try {
    ingest_file(testing::data_path("does-not-exist.jsonl"), schema);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

}  // namespace
}  // namespace algedon
