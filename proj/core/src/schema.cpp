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

#include "algedon/schema.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "algedon/error.hpp"

namespace algedon {

namespace {

Error violation(const std::string& what) { return Error(ErrorKind::kSchemaViolation, "schema violation: " + what); }

double bin_edge(const Binning& b, std::size_t i) {
  return b.min + (b.max - b.min) * static_cast<double>(i) / static_cast<double>(b.bins);
}

std::optional<double> parse_number(std::string_view text) {
  double out = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return out;
}

}  // namespace

std::string bin_label(std::size_t index) { return "bin" + std::to_string(index); }

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes, std::vector<std::string> classes,
                                 std::string distress_class)
    : attributes_(std::move(attributes)), classes_(std::move(classes)), distress_class_(std::move(distress_class)) {
  if (classes_.empty()) throw Error(ErrorKind::kConfig, "schema declares no classes");
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    Attribute& attr = attributes_[a];
    if (attr.name.empty()) throw Error(ErrorKind::kConfig, "attribute with empty name");
    if (!attribute_lookup_.emplace(attr.name, a).second) {
      throw Error(ErrorKind::kConfig, "duplicate attribute '" + attr.name + "'");
    }
    if (attr.kind == AttributeKind::kNumeric) {
      if (!attr.binning) throw Error(ErrorKind::kConfig, "numeric attribute '" + attr.name + "' has no binning");
      const Binning& b = *attr.binning;
      if (b.bins < 2) throw Error(ErrorKind::kConfig, "attribute '" + attr.name + "': bins must be >= 2");
      if (!std::isfinite(b.min) || !std::isfinite(b.max) || !(b.min < b.max)) {
        throw Error(ErrorKind::kConfig, "attribute '" + attr.name + "': binning needs finite min < max");
      }
      attr.domain.clear();
      for (std::size_t i = 0; i < b.bins; ++i) attr.domain.push_back(bin_label(i));
    } else if (attr.domain.empty()) {
      throw Error(ErrorKind::kConfig, "attribute '" + attr.name + "' has an empty domain");
    }
    auto& values = value_lookup_.emplace_back();
    for (std::size_t v = 0; v < attr.domain.size(); ++v) {
      if (!values.emplace(attr.domain[v], v).second) {
        throw Error(ErrorKind::kConfig, "attribute '" + attr.name + "' repeats value '" + attr.domain[v] + "'");
      }
    }
  }
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    if (!class_lookup_.emplace(classes_[c], c).second) {
      throw Error(ErrorKind::kConfig, "duplicate class '" + classes_[c] + "'");
    }
  }
  auto it = class_lookup_.find(distress_class_);
  if (it == class_lookup_.end()) {
    throw Error(ErrorKind::kConfig, "distress class '" + distress_class_ + "' is not a declared class");
  }
  distress_index_ = it->second;
}

Attribute AttributeSchema::categorical(std::string name, std::vector<std::string> domain, AttributeRole role) {
  return Attribute{std::move(name), AttributeKind::kCategorical, role, std::move(domain), std::nullopt};
}

Attribute AttributeSchema::numeric(std::string name, Binning binning, AttributeRole role) {
  return Attribute{std::move(name), AttributeKind::kNumeric, role, {}, binning};
}

std::optional<std::size_t> AttributeSchema::find_attribute(std::string_view name) const {
  auto it = attribute_lookup_.find(name);
  if (it == attribute_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> AttributeSchema::find_value(std::size_t attribute, std::string_view value) const {
  if (attribute >= value_lookup_.size()) return std::nullopt;
  auto it = value_lookup_[attribute].find(value);
  if (it == value_lookup_[attribute].end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> AttributeSchema::find_class(std::string_view label) const {
  auto it = class_lookup_.find(label);
  if (it == class_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t AttributeSchema::attribute_index(std::string_view name) const {
  if (auto a = find_attribute(name)) return *a;
  throw violation("unknown attribute '" + std::string(name) + "'");
}

std::size_t AttributeSchema::value_index(std::size_t attribute, std::string_view value) const {
  if (auto v = find_value(attribute, value)) return *v;
  throw violation("value '" + std::string(value) + "' is not in the domain of '" + attributes_.at(attribute).name + "'");
}

std::size_t AttributeSchema::class_index(std::string_view label) const {
  if (auto c = find_class(label)) return *c;
  throw Error(ErrorKind::kUnknownClass, "schema violation: unknown class '" + std::string(label) + "'");
}

std::size_t AttributeSchema::discretize(std::size_t attribute, double raw) const {
  const Attribute& attr = attributes_.at(attribute);
  if (attr.kind != AttributeKind::kNumeric) throw violation("attribute '" + attr.name + "' is not numeric");
  if (!std::isfinite(raw)) throw violation("non-finite value for '" + attr.name + "'");
  const Binning& b = *attr.binning;
  if (raw < b.min) return 0;
  if (raw >= b.max) return b.bins - 1;
  double scaled = std::floor((raw - b.min) * static_cast<double>(b.bins) / (b.max - b.min));
  auto idx = static_cast<std::size_t>(std::max(0.0, std::min(scaled, static_cast<double>(b.bins - 1))));
  // Settle rounding at the edges so that bins agree with bin_edge() exactly.
  while (idx + 1 < b.bins && raw >= bin_edge(b, idx + 1)) ++idx;
  while (idx > 0 && raw < bin_edge(b, idx)) --idx;
  return idx;
}

std::size_t AttributeSchema::resolve(std::size_t attribute, const RawValue& raw) const {
  const Attribute& attr = attributes_.at(attribute);
  if (const double* number = std::get_if<double>(&raw)) {
    if (attr.kind != AttributeKind::kNumeric) {
      throw violation("attribute '" + attr.name + "' is categorical but got a number");
    }
    return discretize(attribute, *number);
  }
  const std::string& text = std::get<std::string>(raw);
  if (auto v = find_value(attribute, text)) return *v;
  if (attr.kind == AttributeKind::kNumeric) {
    if (auto number = parse_number(text)) return discretize(attribute, *number);
  }
  throw violation("value '" + text + "' is not in the domain of '" + attr.name + "'");
}

}  // namespace algedon
