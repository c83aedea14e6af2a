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

#include "algedon/simulate.hpp"

#include <algorithm>
#include <fstream>

#include "algedon/error.hpp"
#include "algedon/json_codec.hpp"

namespace algedon {

double ScenarioRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t ScenarioRng::pick(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw Error(ErrorKind::kConfig, "cannot draw from all-zero weights");
  const double target = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

namespace {

std::vector<std::pair<std::string, RawValue>> draw_values(const AttributeSchema& schema,
                                                          const std::vector<ValueProfile>& profile,
                                                          ScenarioRng& rng) {
  std::vector<std::pair<std::string, RawValue>> values;
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    const Attribute& attr = schema.attributes()[a];
    const ValueProfile& p = profile[a];
    if (p.range) {
      values.emplace_back(attr.name, p.range->first + rng.uniform() * (p.range->second - p.range->first));
    } else if (p.weights.empty()) {
      std::vector<double> uniform(attr.domain.size(), 1.0);
      values.emplace_back(attr.name, attr.domain[rng.pick(uniform)]);
    } else {
      values.emplace_back(attr.name, attr.domain[rng.pick(p.weights)]);
    }
  }
  return values;
}

void write_lines(const std::filesystem::path& path, const std::vector<Json>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  for (const Json& j : lines) out << j.dump() << '\n';
  if (!out) throw Error(ErrorKind::kIo, "error writing '" + path.string() + "'");
}

}  // namespace

SimulationOutput run_scenario(const Scenario& scenario) {
  const AttributeSchema& schema = *scenario.schema;
  Monitor monitor(scenario.schema, Hierarchy(scenario.units), scenario.config);
  ScenarioRng rng(scenario.seed);
  SimulationOutput out;

  for (const UnitSpec& unit : monitor.hierarchy().units()) {
    if (!monitor.hierarchy().is_leaf(unit.id)) continue;
    for (std::size_t c = 0; c < schema.class_count(); ++c) {
      for (std::size_t i = 0; i < scenario.training_per_class; ++i) {
        EventRecord rec{unit.id, 0, draw_values(schema, scenario.profiles[c], rng), schema.classes()[c]};
        monitor.train(rec);
        out.events.push_back(std::move(rec));
      }
    }
  }

  std::vector<EventRecord> stream;
  for (const auto& [unit, segments] : scenario.segments) {
    for (const Segment& segment : segments) {
      for (std::int64_t ts = segment.start; ts < segment.end; ts += segment.interval) {
        const std::size_t c = rng.pick(segment.mixture);
        EventRecord rec{unit, ts, draw_values(schema, scenario.profiles[c], rng), std::nullopt};
        if (scenario.label_stream) rec.label = schema.classes()[c];
        stream.push_back(std::move(rec));
      }
    }
  }
  std::stable_sort(stream.begin(), stream.end(),
                   [](const EventRecord& l, const EventRecord& r) { return l.timestamp < r.timestamp; });
  for (EventRecord& rec : stream) {
    monitor.update(rec);
    out.events.push_back(std::move(rec));
  }

  out.signals = monitor.signal_log();
  out.report = monitor.report();
  return out;
}

void write_simulation(const SimulationOutput& output, const AttributeSchema& schema, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create '" + dir.string() + "': " + ec.message());

  std::vector<Json> events;
  for (const EventRecord& rec : output.events) events.push_back(event_to_json(rec));
  write_lines(dir / "events.jsonl", events);

  std::vector<Json> signals;
  for (const AlgedonicSignal& s : output.signals) signals.push_back(signal_to_json(s));
  write_lines(dir / "signals.jsonl", signals);

  std::ofstream report(dir / "report.json", std::ios::binary | std::ios::trunc);
  if (!report) throw Error(ErrorKind::kIo, "cannot write report.json");
  report << report_to_json(schema, output.report).dump(2) << '\n';
}

}  // namespace algedon
