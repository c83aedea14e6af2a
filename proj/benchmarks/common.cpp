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

#include "common.hpp"

#include <random>
#include <string>

namespace algedon::bench {

std::shared_ptr<const AttributeSchema> grid_schema(std::size_t attributes, std::size_t values, std::size_t classes) {
  std::vector<Attribute> attrs;
  for (std::size_t a = 0; a < attributes; ++a) {
    std::vector<std::string> domain;
    for (std::size_t v = 0; v < values; ++v) domain.push_back("v" + std::to_string(v));
    attrs.push_back(AttributeSchema::categorical("a" + std::to_string(a), domain));
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < classes; ++c) labels.push_back("c" + std::to_string(c));
  const std::string distress = labels.back();
  return std::make_shared<const AttributeSchema>(std::move(attrs), std::move(labels), distress);
}

std::vector<Observation> observations(const AttributeSchema& schema, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Observation> rows(n);
  for (Observation& row : rows) {
    row.values.resize(schema.attribute_count());
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      row.values[a] = static_cast<std::int32_t>(rng() % schema.domain_size(a));
    }
    row.label = static_cast<std::int32_t>(rng() % schema.class_count());
  }
  return rows;
}

std::vector<EventRecord> records(const AttributeSchema& schema, const std::vector<Observation>& rows) {
  std::vector<EventRecord> out;
  out.reserve(rows.size());
  std::int64_t ts = 0;
  for (const Observation& row : rows) {
    EventRecord rec{"unit", ts++, {}, schema.classes()[static_cast<std::size_t>(row.label)]};
    for (std::size_t a = 0; a < row.values.size(); ++a) {
      rec.values.emplace_back(schema.attributes()[a].name,
                              schema.attributes()[a].domain[static_cast<std::size_t>(row.values[a])]);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

CountStore store_of(std::shared_ptr<const AttributeSchema> schema, const std::vector<Observation>& rows) {
  CountStore store(std::move(schema));
  for (const Observation& row : rows) store.add(row);
  return store;
}

}  // namespace algedon::bench
