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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algedon/ingest.hpp"
#include "algedon/monitor.hpp"

namespace algedon {

/// Portable scenario RNG: std::mt19937_64, whose output sequence is fixed by
/// the C++ standard, with our own mapping to doubles so that replay does not
/// depend on a standard library's distribution implementations.
class ScenarioRng {
 public:
  explicit ScenarioRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits of one draw.
  double uniform();
  /// Index drawn proportionally to non-negative weights (at least one positive).
  std::size_t pick(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

/// Per-attribute generator for one class.
struct ValueProfile {
  std::vector<double> weights;                      // over the domain; empty means uniform
  std::optional<std::pair<double, double>> range;   // numeric only: uniform raw value
};

struct Segment {
  std::int64_t start = 0;
  std::int64_t end = 0;  // exclusive
  std::int64_t interval = 1000;
  std::vector<double> mixture;  // class weights, schema order
};

struct Scenario {
  std::uint64_t seed = 0;
  std::shared_ptr<const AttributeSchema> schema;
  std::vector<UnitSpec> units;
  MonitorConfig config;
  std::vector<std::vector<ValueProfile>> profiles;  // [class][attribute]
  std::size_t training_per_class = 0;  // labeled warm-up events per leaf unit and class
  bool label_stream = false;
  std::map<std::string, std::vector<Segment>> segments;
};

struct SimulationOutput {
  std::vector<EventRecord> events;
  std::vector<AlgedonicSignal> signals;
  AdvisoryReport report;
};

SimulationOutput run_scenario(const Scenario& scenario);

/// Writes events.jsonl, signals.jsonl and report.json into dir.
void write_simulation(const SimulationOutput& output, const AttributeSchema& schema,
                      const std::filesystem::path& dir);

}  // namespace algedon
