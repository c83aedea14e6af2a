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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "algedon/error.hpp"
#include "algedon/json_codec.hpp"
#include "algedon/simulate.hpp"
#include "fixtures.hpp"

namespace algedon {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(ScenarioRng, MatchesReferenceEngineOutput) {
  // First output of a 64-bit Mersenne Twister seeded with 5489 is
  // 14514284786278117030; uniform() keeps its top 53 bits.
  ScenarioRng rng(5489);
  EXPECT_EQ(rng.uniform(), static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
}

TEST(ScenarioRng, PickFollowsCumulativeWeights) {
  ScenarioRng rng(1);
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 20000; ++i) ++hits[rng.pick({1.0, 0.0, 3.0})];
  EXPECT_EQ(hits[1], 0);
  EXPECT_NEAR(hits[2] / 20000.0, 0.75, 0.02);
}

TEST(Simulate, SameSeedGivesByteIdenticalFiles) {
  const Scenario scenario = load_scenario(testing::data_path("scenario_hot.json"));
  testing::TempDir a("sim-a"), b("sim-b");
  write_simulation(run_scenario(scenario), *scenario.schema, a.path());
  write_simulation(run_scenario(scenario), *scenario.schema, b.path());
  for (const char* name : {"events.jsonl", "signals.jsonl", "report.json"}) {
    const std::string first = slurp(a.path() / name);
    EXPECT_FALSE(first.empty()) << name;
    EXPECT_EQ(first, slurp(b.path() / name)) << name;
  }
}

TEST(Simulate, DifferentSeedChangesTheStream) {
  Scenario scenario = load_scenario(testing::data_path("scenario_hot.json"));
  const auto first = run_scenario(scenario);
  scenario.seed += 1;
  const auto second = run_scenario(scenario);
  ASSERT_EQ(first.events.size(), second.events.size());
  bool differs = false;
  for (std::size_t i = 0; i < first.events.size() && !differs; ++i) {
    differs = event_to_json(first.events[i]) != event_to_json(second.events[i]);
  }
  EXPECT_TRUE(differs);
}

TEST(Simulate, ZeroDistressMixtureEmitsNoSignals) {
  const Scenario scenario = load_scenario(testing::data_path("scenario_quiet.json"));
  const SimulationOutput out = run_scenario(scenario);
  EXPECT_GT(out.events.size(), 500u);
  EXPECT_TRUE(out.signals.empty());
  testing::TempDir dir("sim-quiet");
  write_simulation(out, *scenario.schema, dir.path());
  EXPECT_EQ(std::filesystem::file_size(dir.path() / "signals.jsonl"), 0u);
}

TEST(Simulate, SignalsStayInsideTheHotSegment) {
  const Scenario scenario = load_scenario(testing::data_path("scenario_hot.json"));
  const SimulationOutput out = run_scenario(scenario);
  ASSERT_FALSE(out.signals.empty());
  for (const AlgedonicSignal& s : out.signals) {
    EXPECT_EQ(s.unit, "plant-a");
    EXPECT_GE(s.timestamp, 60000);
    EXPECT_LT(s.timestamp, 90000);
  }
}

TEST(Simulate, EventsAreTimeOrderedAndStreamIsUnlabeledByDefault) {
  const Scenario scenario = load_scenario(testing::data_path("scenario_hot.json"));
  const SimulationOutput out = run_scenario(scenario);
  for (std::size_t i = 1; i < out.events.size(); ++i) {
    EXPECT_LE(out.events[i - 1].timestamp, out.events[i].timestamp);
  }
  // Warm-up training events sit at ts = 0 with their labels; the stream after
  // them carries none unless the scenario asks for it.
  for (const EventRecord& e : out.events) EXPECT_EQ(e.timestamp == 0, e.label.has_value());
}

TEST(Simulate, MalformedScenarioIsAConfigError) {
  Json j = read_json_file(testing::data_path("scenario_hot.json"));
  j["segments"]["plant-a"][0]["mixture"] = {{"riot", 1.0}};
  EXPECT_THROW(scenario_from_json(j, testing::data_path("")), Error);
  j = read_json_file(testing::data_path("scenario_hot.json"));
  j["segments"]["sector-north"] = Json::array();
  EXPECT_THROW(scenario_from_json(j, testing::data_path("")), Error);
  j = read_json_file(testing::data_path("scenario_hot.json"));
  j.erase("seed");
  EXPECT_THROW(scenario_from_json(j, testing::data_path("")), Error);
}

}  // namespace
}  // namespace algedon
