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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace algedon {

enum class AttributeKind { kCategorical, kNumeric };

/// Evidence attributes feed x-side queries; outcome attributes are the y side
/// when sizing the observed environment.
enum class AttributeRole { kEvidence, kOutcome };

struct Binning {
  double min = 0.0;
  double max = 1.0;
  std::size_t bins = 2;

  bool operator==(const Binning&) const = default;
};

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::kCategorical;
  AttributeRole role = AttributeRole::kEvidence;
  // Categorical: the declared values. Numeric: generated bin labels "bin0".."binN-1".
  std::vector<std::string> domain;
  std::optional<Binning> binning;

  bool operator==(const Attribute&) const = default;
};

/// A raw value as it appears on the wire, before discretization.
using RawValue = std::variant<std::string, double>;

class AttributeSchema {
 public:
  AttributeSchema(std::vector<Attribute> attributes, std::vector<std::string> classes,
                  std::string distress_class);

  static Attribute categorical(std::string name, std::vector<std::string> domain,
                               AttributeRole role = AttributeRole::kEvidence);
  static Attribute numeric(std::string name, Binning binning,
                           AttributeRole role = AttributeRole::kEvidence);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::string& distress_class() const { return distress_class_; }
  std::size_t distress_index() const { return distress_index_; }

  std::size_t attribute_count() const { return attributes_.size(); }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t domain_size(std::size_t attribute) const { return attributes_.at(attribute).domain.size(); }

  std::optional<std::size_t> find_attribute(std::string_view name) const;
  std::optional<std::size_t> find_value(std::size_t attribute, std::string_view value) const;
  std::optional<std::size_t> find_class(std::string_view label) const;

  // Throwing lookups; failures are schema violations.
  std::size_t attribute_index(std::string_view name) const;
  std::size_t value_index(std::size_t attribute, std::string_view value) const;
  std::size_t class_index(std::string_view label) const;

  /// Equal-width bin index of a raw number for a numeric attribute. Saturates
  /// outside [min, max); bins are half-open [lo, hi).
  std::size_t discretize(std::size_t attribute, double raw) const;

  /// Maps a wire value onto a domain index. Numbers are discretized; strings
  /// must name a domain value, or (numeric attributes only) parse as a number.
  std::size_t resolve(std::size_t attribute, const RawValue& raw) const;

  bool operator==(const AttributeSchema&) const = default;

 private:
  std::vector<Attribute> attributes_;
  std::vector<std::string> classes_;
  std::string distress_class_;
  std::size_t distress_index_ = 0;
  std::map<std::string, std::size_t, std::less<>> attribute_lookup_;
  std::vector<std::map<std::string, std::size_t, std::less<>>> value_lookup_;
  std::map<std::string, std::size_t, std::less<>> class_lookup_;
};

std::string bin_label(std::size_t index);

}  // namespace algedon
