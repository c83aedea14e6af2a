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
#include <memory>
#include <vector>

#include "algedon/count_store.hpp"
#include "algedon/ingest.hpp"
#include "algedon/schema.hpp"

namespace algedon::bench {

/// `attributes` categorical attributes of `values` values each, `classes` classes.
std::shared_ptr<const AttributeSchema> grid_schema(std::size_t attributes, std::size_t values, std::size_t classes);

/// Deterministic pseudo-random labeled observations over the schema.
std::vector<Observation> observations(const AttributeSchema& schema, std::size_t n, std::uint64_t seed);

/// The same observations as named event records for one unit.
std::vector<EventRecord> records(const AttributeSchema& schema, const std::vector<Observation>& rows);

CountStore store_of(std::shared_ptr<const AttributeSchema> schema, const std::vector<Observation>& rows);

}  // namespace algedon::bench
