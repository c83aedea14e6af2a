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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algedon/count_store.hpp"

namespace algedon {

/// How zero counts are kept away from the likelihood product.
///  kClasses:  (N_ic + 1) / (N_c + c), c = number of classes (the default).
///  kLaplace:  (N_ic + 1) / (N_c + |V_a|), conventional value-domain Laplace.
///  kOff:      N_ic / N_c.
/// Priors are (N_c + 1) / (N + c) under either smoothing mode, N_c / N when off.
enum class Smoothing { kOff, kClasses, kLaplace };

std::string_view to_string(Smoothing s);
Smoothing parse_smoothing(std::string_view text);

/// Ordered attribute assignments. Order matters to the causal ladder, which
/// uses the last assignment as the x_n / y_n marginal.
class Evidence {
 public:
  using Assignment = std::pair<std::size_t, std::size_t>;

  Evidence() = default;

  static Evidence from_names(const AttributeSchema& schema,
                             const std::vector<std::pair<std::string, std::string>>& pairs);
  static Evidence from_raw(const AttributeSchema& schema,
                           const std::vector<std::pair<std::string, RawValue>>& pairs);
  static Evidence from_observation(const Observation& obs);

  /// Appends; assigning the same attribute twice is a schema violation.
  Evidence& add(const AttributeSchema& schema, std::size_t attribute, std::size_t value);

  /// Replaces the value in the attribute's existing slot, or appends when absent.
  Evidence substituted(std::size_t attribute, std::size_t value) const;

  const std::vector<Assignment>& assignments() const { return assignments_; }
  bool empty() const { return assignments_.empty(); }
  std::size_t size() const { return assignments_.size(); }
  const Assignment& last() const { return assignments_.back(); }

  EventSet as_event_set(const AttributeSchema& schema) const;

  bool operator==(const Evidence&) const = default;

 private:
  std::vector<Assignment> assignments_;
};

struct Posterior {
  std::vector<double> scores;      // per class index, normalized
  std::vector<double> log_scores;  // log prior + sum of log likelihoods (unnormalized)
  bool normalized = true;
  bool smoothing_used = false;
};

double likelihood(const CountStore& store, std::size_t attribute, std::size_t value,
                  std::size_t class_index, Smoothing smoothing);
double likelihood(const CountStore& store, std::string_view attribute, std::string_view value,
                  std::string_view class_label, Smoothing smoothing);

double prior(const CountStore& store, std::size_t class_index, Smoothing smoothing);

Posterior posterior(const CountStore& store, const Evidence& e, Smoothing smoothing);

struct Classification {
  std::size_t class_index = 0;
  std::string label;
  Posterior posterior;
};

/// Argmax of the posterior. Near-ties are settled by exact rational comparison
/// of the count products; remaining ties go to the lexicographically smallest label.
Classification classify(const CountStore& store, const Evidence& e, Smoothing smoothing);

}  // namespace algedon
