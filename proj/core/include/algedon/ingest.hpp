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
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algedon/count_store.hpp"
#include "algedon/schema.hpp"

namespace algedon {

struct EventRecord {
  std::string unit;
  std::int64_t timestamp = 0;  // milliseconds since epoch
  std::vector<std::pair<std::string, RawValue>> values;
  std::optional<std::string> label;
};

/// Discretizes and validates a record. Throws a schema violation.
Observation to_observation(const AttributeSchema& schema, const EventRecord& rec);

/// Single-writer incremental store with per-unit timestamp ordering.
/// Snapshots are O(1) and never observe later writes (copy-on-write).
class EventIngestor {
 public:
  explicit EventIngestor(std::shared_ptr<const AttributeSchema> schema);

  /// Counts the record once. Schema violations and out-of-order timestamps
  /// throw and leave the store untouched.
  void ingest(const EventRecord& rec);
  void ingest(const std::string& unit, std::int64_t timestamp, const Observation& obs);

  std::shared_ptr<const CountStore> snapshot() const;

  const AttributeSchema& schema() const { return *schema_; }
  const std::shared_ptr<const AttributeSchema>& schema_ptr() const { return schema_; }

 private:
  std::shared_ptr<const AttributeSchema> schema_;
  mutable std::mutex mutex_;
  std::shared_ptr<CountStore> store_;
  std::map<std::string, std::int64_t> last_timestamp_;
};

struct RejectedLine {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct IngestStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<RejectedLine> reject_reasons;
};

struct IngestResult {
  std::shared_ptr<const CountStore> store;
  IngestStats stats;
  std::vector<EventRecord> records;  // accepted records, in file order
};

/// Reads line-delimited JSON records. Bad lines are rejected and counted; an
/// unreadable file throws.
IngestResult ingest_file(const std::filesystem::path& path,
                         std::shared_ptr<const AttributeSchema> schema);

}  // namespace algedon
