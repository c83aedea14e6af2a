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

#include "algedon/bayes_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "algedon/error.hpp"

namespace algedon {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ExactScore {
  cpp_int num = 1;
  cpp_int den = 1;
};

void check_indices(const CountStore& store, std::size_t attribute, std::size_t value, std::size_t c) {
  const AttributeSchema& schema = store.schema();
  if (c >= schema.class_count()) throw Error(ErrorKind::kUnknownClass, "unknown class index");
  if (attribute >= schema.attribute_count() || value >= schema.domain_size(attribute)) {
    throw Error(ErrorKind::kSchemaViolation, "schema violation: evidence term out of range");
  }
}

std::uint64_t likelihood_denominator(const CountStore& store, std::size_t attribute, std::size_t c,
                                     Smoothing smoothing) {
  const std::uint64_t n_c = store.class_count(c);
  switch (smoothing) {
    case Smoothing::kOff: return n_c;
    case Smoothing::kClasses: return n_c + store.schema().class_count();
    case Smoothing::kLaplace: return n_c + store.schema().domain_size(attribute);
  }
  return n_c;
}

// Unnormalized score as an exact fraction; the common 1/(N + c) or 1/N prior
// denominator is kept so fractions from different classes compare directly.
ExactScore exact_score(const CountStore& store, const Evidence& e, std::size_t c, Smoothing smoothing) {
  const std::uint64_t add = smoothing == Smoothing::kOff ? 0 : 1;
  ExactScore s;
  s.num = store.class_count(c) + add;
  s.den = store.labeled_events() + (smoothing == Smoothing::kOff ? 0 : store.schema().class_count());
  for (const auto& [attribute, value] : e.assignments()) {
    s.num *= store.joint_count(attribute, value, c) + add;
    s.den *= likelihood_denominator(store, attribute, c, smoothing);
  }
  return s;
}

int compare(const ExactScore& a, const ExactScore& b) {
  const cpp_int lhs = a.num * b.den;
  const cpp_int rhs = b.num * a.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

std::string_view to_string(Smoothing s) {
  switch (s) {
    case Smoothing::kOff: return "off";
    case Smoothing::kClasses: return "on";
    case Smoothing::kLaplace: return "laplace";
  }
  return "on";
}

Smoothing parse_smoothing(std::string_view text) {
  if (text == "on" || text == "classes") return Smoothing::kClasses;
  if (text == "off") return Smoothing::kOff;
  if (text == "laplace") return Smoothing::kLaplace;
  throw Error(ErrorKind::kInvalidQuery, "unknown smoothing mode '" + std::string(text) + "'");
}

Evidence Evidence::from_names(const AttributeSchema& schema,
                              const std::vector<std::pair<std::string, std::string>>& pairs) {
  Evidence e;
  for (const auto& [name, value] : pairs) {
    std::size_t a = schema.attribute_index(name);
    e.add(schema, a, schema.value_index(a, value));
  }
  return e;
}

Evidence Evidence::from_raw(const AttributeSchema& schema,
                            const std::vector<std::pair<std::string, RawValue>>& pairs) {
  Evidence e;
  for (const auto& [name, raw] : pairs) {
    std::size_t a = schema.attribute_index(name);
    e.add(schema, a, schema.resolve(a, raw));
  }
  return e;
}

Evidence Evidence::from_observation(const Observation& obs) {
  Evidence e;
  for (std::size_t a = 0; a < obs.values.size(); ++a) {
    if (obs.values[a] != kMissing) e.assignments_.emplace_back(a, static_cast<std::size_t>(obs.values[a]));
  }
  return e;
}

Evidence& Evidence::add(const AttributeSchema& schema, std::size_t attribute, std::size_t value) {
  if (attribute >= schema.attribute_count() || value >= schema.domain_size(attribute)) {
    throw Error(ErrorKind::kSchemaViolation, "schema violation: evidence term out of range");
  }
  for (const auto& [a, v] : assignments_) {
    if (a == attribute) {
      throw Error(ErrorKind::kSchemaViolation,
                  "schema violation: attribute '" + schema.attributes()[a].name + "' assigned twice");
    }
  }
  assignments_.emplace_back(attribute, value);
  return *this;
}

Evidence Evidence::substituted(std::size_t attribute, std::size_t value) const {
  Evidence out = *this;
  for (auto& [a, v] : out.assignments_) {
    if (a == attribute) {
      v = value;
      return out;
    }
  }
  out.assignments_.emplace_back(attribute, value);
  return out;
}

EventSet Evidence::as_event_set(const AttributeSchema& schema) const {
  EventSet s;
  for (const auto& [a, v] : assignments_) s.with(schema, a, v);
  return s;
}

double likelihood(const CountStore& store, std::size_t attribute, std::size_t value, std::size_t class_index,
                  Smoothing smoothing) {
  check_indices(store, attribute, value, class_index);
  const std::uint64_t n_ic = store.joint_count(attribute, value, class_index);
  if (smoothing == Smoothing::kOff) {
    const std::uint64_t n_c = store.class_count(class_index);
    if (n_c == 0) {
      throw Error(ErrorKind::kNoObservations,
                  "no observations of class '" + store.schema().classes()[class_index] + "'");
    }
    return static_cast<double>(n_ic) / static_cast<double>(n_c);
  }
  return static_cast<double>(n_ic + 1) /
         static_cast<double>(likelihood_denominator(store, attribute, class_index, smoothing));
}

double likelihood(const CountStore& store, std::string_view attribute, std::string_view value,
                  std::string_view class_label, Smoothing smoothing) {
  const AttributeSchema& schema = store.schema();
  std::size_t a = schema.attribute_index(attribute);
  return likelihood(store, a, schema.value_index(a, value), schema.class_index(class_label), smoothing);
}

double prior(const CountStore& store, std::size_t class_index, Smoothing smoothing) {
  if (class_index >= store.schema().class_count()) throw Error(ErrorKind::kUnknownClass, "unknown class index");
  if (store.labeled_events() == 0) throw Error(ErrorKind::kNoObservations, "no observations");
  const std::uint64_t n_c = store.class_count(class_index);
  if (smoothing == Smoothing::kOff) {
    return static_cast<double>(n_c) / static_cast<double>(store.labeled_events());
  }
  return static_cast<double>(n_c + 1) / static_cast<double>(store.labeled_events() + store.schema().class_count());
}

Posterior posterior(const CountStore& store, const Evidence& e, Smoothing smoothing) {
  if (store.labeled_events() == 0) throw Error(ErrorKind::kNoObservations, "no observations");
  const std::size_t classes = store.schema().class_count();
  Posterior out;
  out.smoothing_used = smoothing != Smoothing::kOff;
  out.log_scores.assign(classes, kNegInf);
  double best = kNegInf;
  for (std::size_t c = 0; c < classes; ++c) {
    if (smoothing == Smoothing::kOff && store.class_count(c) == 0) continue;
    double log_score = std::log(prior(store, c, smoothing));
    for (const auto& [attribute, value] : e.assignments()) {
      log_score += std::log(likelihood(store, attribute, value, c, smoothing));
    }
    out.log_scores[c] = log_score;
    best = std::max(best, log_score);
  }
  if (best == kNegInf) {
    throw Error(ErrorKind::kVanishingPosterior, "vanishing posterior; enable smoothing");
  }
  out.scores.assign(classes, 0.0);
  double total = 0.0;
  for (std::size_t c = 0; c < classes; ++c) {
    if (out.log_scores[c] == kNegInf) continue;
    out.scores[c] = std::exp(out.log_scores[c] - best);
    total += out.scores[c];
  }
  for (double& s : out.scores) s /= total;
  return out;
}

Classification classify(const CountStore& store, const Evidence& e, Smoothing smoothing) {
  Classification out;
  out.posterior = posterior(store, e, smoothing);
  const auto& logs = out.posterior.log_scores;
  const double best = *std::max_element(logs.begin(), logs.end());

  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c < logs.size(); ++c) {
    if (logs[c] != kNegInf && logs[c] >= best - 1e-9 * std::max(1.0, std::abs(best))) candidates.push_back(c);
  }

  const auto& labels = store.schema().classes();
  std::size_t winner = candidates.front();
  ExactScore winner_score = exact_score(store, e, winner, smoothing);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const std::size_t c = candidates[i];
    ExactScore score = exact_score(store, e, c, smoothing);
    const int cmp = compare(score, winner_score);
    if (cmp > 0 || (cmp == 0 && labels[c] < labels[winner])) {
      winner = c;
      winner_score = std::move(score);
    }
  }
  out.class_index = winner;
  out.label = labels[winner];
  return out;
}

}  // namespace algedon
