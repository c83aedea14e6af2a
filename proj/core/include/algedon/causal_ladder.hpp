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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algedon/bayes_filter.hpp"
#include "algedon/count_store.hpp"

namespace algedon {

// Rungs of the ladder of causation, plus the combined retrospective score.
enum class LadderLevel {
  kAssociation,    // "What is?"   seeing
  kIntervention,   // "What if?"   doing
  kRetrospection,  // "Why?"       imagining
  kCombined,       // p(c | x', y')
};

std::string_view to_string(LadderLevel level);
LadderLevel parse_level(std::string_view text);

/// Which marginal divides a correction term.
///  kLastEvidenceAttribute: the last assignment of the conditioning vector (x_n or y_n).
///  kDoAttribute: the intervened assignment do(x_0).
enum class DenominatorPolicy { kLastEvidenceAttribute, kDoAttribute };

std::string_view to_string(DenominatorPolicy policy);
DenominatorPolicy parse_policy(std::string_view text);

/// How the combined level treats its product over k = 1..n.
///  kFactorized: the Bayes term is the naive-Bayes posterior (one factor per attribute).
///  kLiteralPower: the whole Bayes fraction is raised to the n-th power.
enum class ProductMode { kFactorized, kLiteralPower };

std::string_view to_string(ProductMode mode);
ProductMode parse_product_mode(std::string_view text);

struct LadderQuery {
  LadderLevel level = LadderLevel::kAssociation;
  Evidence evidence_x;
  std::optional<Evidence> outcome_y;
  std::optional<Evidence::Assignment> do_target;
  DenominatorPolicy denominator = DenominatorPolicy::kLastEvidenceAttribute;
  Smoothing smoothing = Smoothing::kClasses;
  ProductMode product = ProductMode::kFactorized;
};

struct CorrectionPart {
  std::string name;            // "outcome" (+ p(c ∩ y)/p(.)) or "evidence" (- p(c ∩ x)/p(.))
  std::vector<double> values;  // signed contribution per class
};

struct LadderResult {
  LadderLevel level = LadderLevel::kAssociation;
  std::vector<double> bayes_terms;
  std::vector<double> raw_scores;
  std::vector<double> correction_terms;  // net correction per class
  std::vector<CorrectionPart> correction_parts;
  std::vector<double> normalized_scores;  // empty when every raw score clamps to zero
  bool out_of_range = false;
};

LadderResult what_is(const CountStore& store, const LadderQuery& q);
LadderResult what_if(const CountStore& store, const LadderQuery& q);
LadderResult why(const CountStore& store, const LadderQuery& q);
LadderResult retrospective(const CountStore& store, const LadderQuery& q);

/// Dispatches on q.level.
LadderResult answer(const CountStore& store, const LadderQuery& q);

/// Clamps negatives to zero and renormalizes; empty when nothing positive remains.
std::vector<double> clamp_normalize(const std::vector<double>& raw);

struct EnvironmentScope {
  std::uint64_t x_m = 0;  // distinct observed evidence-attribute values
  std::uint64_t y_n = 0;  // distinct observed outcome-attribute values

  bool operator==(const EnvironmentScope&) const = default;
};

EnvironmentScope environment_scope(const CountStore& store);

}  // namespace algedon
