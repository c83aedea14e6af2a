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

// Independent reference implementations used by the unit and acceptance
// suites. Everything here works from raw observation lists with exact
// rationals and never touches CountStore's internal tallies, so agreement
// with the library is meaningful.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "algedon/bayes_filter.hpp"
#include "algedon/count_store.hpp"
#include "algedon/schema.hpp"

namespace algedon::testing {

using Rational = boost::multiprecision::cpp_rational;
using Assignments = std::vector<std::pair<std::size_t, std::size_t>>;

double to_double(const Rational& r);

/// A raw event table: the only input the oracles accept.
struct RawTable {
  std::shared_ptr<const AttributeSchema> schema;
  std::vector<Observation> rows;

  std::uint64_t count(const Assignments& terms, std::optional<std::size_t> label = std::nullopt) const;
  std::uint64_t labeled() const;
};

/// Class posterior by direct enumeration: for each class the numerator
/// P(a_1..a_n | c) P(c) under the naive factorization, divided by the explicit
/// evidence probability sum_c' P(a_1..a_n | c') P(c').
std::vector<Rational> brute_force_posterior(const RawTable& table, const Assignments& evidence, Smoothing smoothing);

/// Argmax over exact scores; ties go to the lexicographically smallest label.
std::size_t oracle_argmax(const AttributeSchema& schema, const std::vector<Rational>& scores);

/// p(c ∩ context) / p(marginal), exactly, per class.
std::vector<Rational> exact_correction(const RawTable& table, const Assignments& context,
                                       const std::pair<std::size_t, std::size_t>& marginal);

/// Field-by-field comparison of a store against a recount of `rows`.
/// Returns an empty string on agreement, otherwise a description of the first
/// mismatch.
std::string compare_with_recount(const CountStore& store, const std::vector<Observation>& rows);

/// Random schemas and tables for property tests.
struct RandomShape {
  std::size_t max_attributes = 5;
  std::size_t max_values = 4;
  std::size_t max_classes = 4;
  std::size_t max_events = 60;
  double missing_rate = 0.0;    // probability an attribute is absent from an event
  double unlabeled_rate = 0.0;  // probability an event carries no label
};

std::shared_ptr<const AttributeSchema> make_schema(const std::vector<std::size_t>& domain_sizes,
                                                   std::size_t classes);
std::shared_ptr<const AttributeSchema> random_schema(std::mt19937_64& rng, const RandomShape& shape);
std::vector<Observation> random_rows(std::mt19937_64& rng, const AttributeSchema& schema, std::size_t n,
                                     const RandomShape& shape);
CountStore build_store(std::shared_ptr<const AttributeSchema> schema, const std::vector<Observation>& rows);

}  // namespace algedon::testing
