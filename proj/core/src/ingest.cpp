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

#include "algedon/ingest.hpp"

#include <fstream>

#include "algedon/error.hpp"
#include "algedon/json_codec.hpp"

namespace algedon {

Observation to_observation(const AttributeSchema& schema, const EventRecord& rec) {
  Observation obs;
  obs.values.assign(schema.attribute_count(), kMissing);
  for (const auto& [name, raw] : rec.values) {
    const std::size_t a = schema.attribute_index(name);
    if (obs.values[a] != kMissing) {
      throw Error(ErrorKind::kSchemaViolation, "schema violation: attribute '" + name + "' given twice");
    }
    obs.values[a] = static_cast<std::int32_t>(schema.resolve(a, raw));
  }
  if (rec.label) obs.label = static_cast<std::int32_t>(schema.class_index(*rec.label));
  return obs;
}

EventIngestor::EventIngestor(std::shared_ptr<const AttributeSchema> schema)
    : schema_(std::move(schema)), store_(std::make_shared<CountStore>(schema_)) {}

void EventIngestor::ingest(const EventRecord& rec) { ingest(rec.unit, rec.timestamp, to_observation(*schema_, rec)); }

void EventIngestor::ingest(const std::string& unit, std::int64_t timestamp, const Observation& obs) {
  std::lock_guard lock(mutex_);
  auto last = last_timestamp_.find(unit);
  if (last != last_timestamp_.end() && timestamp < last->second) {
    throw Error(ErrorKind::kOutOfOrder, "out-of-order timestamp " + std::to_string(timestamp) + " for unit '" +
                                            unit + "' (last " + std::to_string(last->second) + ")");
  }
  // A snapshot still holds the current store: write to a private copy.
  if (store_.use_count() > 1) {
    auto copy = std::make_shared<CountStore>(*store_);
    copy->add(obs);
    store_ = std::move(copy);
  } else {
    store_->add(obs);
  }
  last_timestamp_[unit] = timestamp;
}

std::shared_ptr<const CountStore> EventIngestor::snapshot() const {
  std::lock_guard lock(mutex_);
  return store_;
}

IngestResult ingest_file(const std::filesystem::path& path, std::shared_ptr<const AttributeSchema> schema) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read events file '" + path.string() + "'");

  EventIngestor ingestor(schema);
  IngestResult result;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      EventRecord rec = parse_event_line(line);
      ingestor.ingest(rec);
      result.records.push_back(std::move(rec));
      ++result.stats.accepted;
    } catch (const Error& e) {
      ++result.stats.rejected;
      result.stats.reject_reasons.push_back({line_number, e.what()});
    }
  }
  if (in.bad()) throw Error(ErrorKind::kIo, "error reading events file '" + path.string() + "'");
  result.store = ingestor.snapshot();
  return result;
}

}  // namespace algedon
