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
#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "algedon/schema.hpp"

namespace algedon {

inline constexpr std::int32_t kMissing = -1;

/// One discretized event: a value index per attribute (kMissing when the
/// event did not supply it) and a class index or kMissing when unlabeled.
struct Observation {
  std::vector<std::int32_t> values;
  std::int32_t label = kMissing;

  auto operator<=>(const Observation&) const = default;
};

/// Conjunction of (attribute = value) terms and an optional class term.
class EventSet {
 public:
  using Term = std::pair<std::size_t, std::size_t>;

  EventSet() = default;

  static EventSet from_names(const AttributeSchema& schema,
                             const std::vector<std::pair<std::string, std::string>>& terms,
                             std::optional<std::string_view> class_label = std::nullopt);

  /// Adds a term; a second term on the same attribute is a schema violation.
  EventSet& with(const AttributeSchema& schema, std::size_t attribute, std::size_t value);
  EventSet& with_class(const AttributeSchema& schema, std::size_t class_index);

  /// Event intersection. Conflicting terms produce the null event rather than an error.
  EventSet operator&(const EventSet& other) const;

  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<std::size_t>& class_term() const { return class_term_; }
  bool is_null() const { return null_; }
  bool is_tautology() const { return !null_ && terms_.empty() && !class_term_; }

  bool matches(const Observation& obs) const;

 private:
  std::vector<Term> terms_;  // sorted by attribute
  std::optional<std::size_t> class_term_;
  bool null_ = false;
};

/// Exact integer frequency statistics. All probabilities are derived from
/// these counts at query time.
class CountStore {
 public:
  explicit CountStore(std::shared_ptr<const AttributeSchema> schema);

  const AttributeSchema& schema() const { return *schema_; }
  const std::shared_ptr<const AttributeSchema>& schema_ptr() const { return schema_; }

  std::uint64_t total_events() const { return total_events_; }
  std::uint64_t labeled_events() const { return labeled_events_; }
  std::uint64_t class_count(std::size_t c) const { return class_counts_.at(c); }
  std::uint64_t joint_count(std::size_t attribute, std::size_t value, std::size_t c) const;
  std::uint64_t value_marginal(std::size_t attribute, std::size_t value) const;
  const std::vector<std::uint64_t>& class_counts() const { return class_counts_; }

  /// Number of distinct observed events, keyed by full observation.
  const std::map<Observation, std::uint64_t>& cells() const { return cells_; }

  std::uint64_t count(const EventSet& s) const;

  /// Validates indices against the schema; throws without mutating on failure.
  void add(const Observation& obs);

  bool operator==(const CountStore& other) const;

 private:
  std::size_t joint_offset(std::size_t attribute, std::size_t value, std::size_t c) const;

  std::shared_ptr<const AttributeSchema> schema_;
  std::uint64_t total_events_ = 0;
  std::uint64_t labeled_events_ = 0;
  std::vector<std::uint64_t> class_counts_;
  std::vector<std::size_t> value_offsets_;  // first flat value slot per attribute
  std::vector<std::uint64_t> value_marginals_;
  std::vector<std::uint64_t> joint_counts_;  // [value slot][class]
  std::map<Observation, std::uint64_t> cells_;
};

}  // namespace algedon
