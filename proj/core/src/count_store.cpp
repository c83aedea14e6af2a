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

#include "algedon/count_store.hpp"

#include <algorithm>

#include "algedon/error.hpp"

namespace algedon {

EventSet EventSet::from_names(const AttributeSchema& schema,
                              const std::vector<std::pair<std::string, std::string>>& terms,
                              std::optional<std::string_view> class_label) {
  EventSet s;
  for (const auto& [attribute, value] : terms) {
    std::size_t a = schema.attribute_index(attribute);
    s.with(schema, a, schema.value_index(a, value));
  }
  if (class_label) s.with_class(schema, schema.class_index(*class_label));
  return s;
}

EventSet& EventSet::with(const AttributeSchema& schema, std::size_t attribute, std::size_t value) {
  if (attribute >= schema.attribute_count() || value >= schema.domain_size(attribute)) {
    throw Error(ErrorKind::kSchemaViolation, "schema violation: event term out of range");
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{attribute, 0},
                             [](const Term& l, const Term& r) { return l.first < r.first; });
  if (it != terms_.end() && it->first == attribute) {
    throw Error(ErrorKind::kSchemaViolation,
                "schema violation: attribute '" + schema.attributes()[attribute].name + "' constrained twice");
  }
  terms_.insert(it, Term{attribute, value});
  return *this;
}

EventSet& EventSet::with_class(const AttributeSchema& schema, std::size_t class_index) {
  if (class_index >= schema.class_count()) {
    throw Error(ErrorKind::kUnknownClass, "schema violation: class index out of range");
  }
  if (class_term_) throw Error(ErrorKind::kSchemaViolation, "schema violation: class constrained twice");
  class_term_ = class_index;
  return *this;
}

EventSet EventSet::operator&(const EventSet& other) const {
  EventSet out;
  out.null_ = null_ || other.null_;
  auto l = terms_.begin();
  auto r = other.terms_.begin();
  while (l != terms_.end() || r != other.terms_.end()) {
    if (r == other.terms_.end() || (l != terms_.end() && l->first < r->first)) {
      out.terms_.push_back(*l++);
    } else if (l == terms_.end() || r->first < l->first) {
      out.terms_.push_back(*r++);
    } else {
      if (l->second != r->second) out.null_ = true;
      out.terms_.push_back(*l);
      ++l;
      ++r;
    }
  }
  out.class_term_ = class_term_;
  if (other.class_term_) {
    if (class_term_ && *class_term_ != *other.class_term_) out.null_ = true;
    out.class_term_ = other.class_term_;
  }
  return out;
}

bool EventSet::matches(const Observation& obs) const {
  if (null_) return false;
  if (class_term_ && obs.label != static_cast<std::int32_t>(*class_term_)) return false;
  for (const auto& [attribute, value] : terms_) {
    if (obs.values[attribute] != static_cast<std::int32_t>(value)) return false;
  }
  return true;
}

CountStore::CountStore(std::shared_ptr<const AttributeSchema> schema) : schema_(std::move(schema)) {
  const std::size_t classes = schema_->class_count();
  class_counts_.assign(classes, 0);
  std::size_t slots = 0;
  for (std::size_t a = 0; a < schema_->attribute_count(); ++a) {
    value_offsets_.push_back(slots);
    slots += schema_->domain_size(a);
  }
  value_marginals_.assign(slots, 0);
  joint_counts_.assign(slots * classes, 0);
}

std::size_t CountStore::joint_offset(std::size_t attribute, std::size_t value, std::size_t c) const {
  return (value_offsets_.at(attribute) + value) * class_counts_.size() + c;
}

std::uint64_t CountStore::joint_count(std::size_t attribute, std::size_t value, std::size_t c) const {
  if (value >= schema_->domain_size(attribute) || c >= class_counts_.size()) {
    throw Error(ErrorKind::kSchemaViolation, "schema violation: joint count index out of range");
  }
  return joint_counts_[joint_offset(attribute, value, c)];
}

std::uint64_t CountStore::value_marginal(std::size_t attribute, std::size_t value) const {
  if (value >= schema_->domain_size(attribute)) {
    throw Error(ErrorKind::kSchemaViolation, "schema violation: value index out of range");
  }
  return value_marginals_[value_offsets_.at(attribute) + value];
}

std::uint64_t CountStore::count(const EventSet& s) const {
  if (s.is_null()) return 0;
  if (s.is_tautology()) return total_events_;
  for (const auto& [attribute, value] : s.terms()) {
    if (attribute >= schema_->attribute_count() || value >= schema_->domain_size(attribute)) {
      throw Error(ErrorKind::kSchemaViolation, "schema violation: event term out of range");
    }
  }
  if (s.class_term() && *s.class_term() >= class_counts_.size()) {
    throw Error(ErrorKind::kUnknownClass, "schema violation: class index out of range");
  }
  // Single-term shortcuts agree with the cell sum by construction.
  if (s.terms().empty()) return class_counts_[*s.class_term()];
  if (s.terms().size() == 1) {
    const auto& [attribute, value] = s.terms().front();
    return s.class_term() ? joint_count(attribute, value, *s.class_term()) : value_marginal(attribute, value);
  }
  std::uint64_t n = 0;
  for (const auto& [obs, k] : cells_) {
    if (s.matches(obs)) n += k;
  }
  return n;
}

void CountStore::add(const Observation& obs) {
  if (obs.values.size() != schema_->attribute_count()) {
    throw Error(ErrorKind::kSchemaViolation, "schema violation: observation arity mismatch");
  }
  for (std::size_t a = 0; a < obs.values.size(); ++a) {
    const std::int32_t v = obs.values[a];
    if (v != kMissing && (v < 0 || static_cast<std::size_t>(v) >= schema_->domain_size(a))) {
      throw Error(ErrorKind::kSchemaViolation, "schema violation: value index out of range");
    }
  }
  if (obs.label != kMissing && (obs.label < 0 || static_cast<std::size_t>(obs.label) >= class_counts_.size())) {
    throw Error(ErrorKind::kUnknownClass, "schema violation: class index out of range");
  }

  ++total_events_;
  for (std::size_t a = 0; a < obs.values.size(); ++a) {
    if (obs.values[a] == kMissing) continue;
    const auto v = static_cast<std::size_t>(obs.values[a]);
    ++value_marginals_[value_offsets_[a] + v];
    if (obs.label != kMissing) ++joint_counts_[joint_offset(a, v, static_cast<std::size_t>(obs.label))];
  }
  if (obs.label != kMissing) {
    ++labeled_events_;
    ++class_counts_[static_cast<std::size_t>(obs.label)];
  }
  ++cells_[obs];
}

bool CountStore::operator==(const CountStore& other) const {
  return *schema_ == *other.schema_ && total_events_ == other.total_events_ &&
         labeled_events_ == other.labeled_events_ && class_counts_ == other.class_counts_ &&
         value_marginals_ == other.value_marginals_ && joint_counts_ == other.joint_counts_ &&
         cells_ == other.cells_;
}

}  // namespace algedon
