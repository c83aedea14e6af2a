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

// Wire formats: schema and hierarchy files, line-delimited event records,
// scenario files, ladder queries and results, signals and reports.

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "algedon/causal_ladder.hpp"
#include "algedon/ingest.hpp"
#include "algedon/monitor.hpp"
#include "algedon/schema.hpp"
#include "algedon/simulate.hpp"

namespace algedon {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);

std::shared_ptr<const AttributeSchema> schema_from_json(const Json& j);
Json schema_to_json(const AttributeSchema& schema);
std::shared_ptr<const AttributeSchema> load_schema(const std::filesystem::path& path);

/// Exactly "unit", "ts", "values" and optional "label"; anything else is rejected.
EventRecord event_from_json(const Json& j);
EventRecord parse_event_line(std::string_view line);
Json event_to_json(const EventRecord& rec);

struct HierarchyConfig {
  std::vector<UnitSpec> units;
  MonitorConfig monitor;
};

HierarchyConfig hierarchy_from_json(const Json& j);
HierarchyConfig load_hierarchy(const std::filesystem::path& path);

/// Scenario files may inline "schema"/"hierarchy" objects or give paths
/// relative to base_dir.
Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

TargetedQuery query_from_json(const AttributeSchema& schema, const Json& j);
Json query_to_json(const AttributeSchema& schema, const TargetedQuery& q);
Json evidence_to_json(const AttributeSchema& schema, const Evidence& e);

Json class_map(const AttributeSchema& schema, const std::vector<double>& per_class);
Json result_to_json(const AttributeSchema& schema, const LadderResult& r);
Json signal_to_json(const AlgedonicSignal& s);
Json status_to_json(const AttributeSchema& schema, const UnitStatus& s);
Json report_to_json(const AttributeSchema& schema, const AdvisoryReport& report);

}  // namespace algedon
