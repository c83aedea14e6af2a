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

#include "algedon/causal_ladder.hpp"

#include <algorithm>
#include <cmath>

#include "algedon/error.hpp"

namespace algedon {

namespace {

Error invalid(const std::string& what) { return Error(ErrorKind::kInvalidQuery, what); }

void check_assignment(const AttributeSchema& schema, const Evidence::Assignment& a) {
  if (a.first >= schema.attribute_count() || a.second >= schema.domain_size(a.first)) {
    throw Error(ErrorKind::kSchemaViolation, "schema violation: do target out of range");
  }
}

const Evidence& require_outcome(const LadderQuery& q, const char* level) {
  if (!q.outcome_y || q.outcome_y->empty()) throw invalid(std::string(level) + " requires a non-empty outcome");
  return *q.outcome_y;
}

const Evidence::Assignment& require_do(const LadderQuery& q, const char* why) {
  if (!q.do_target) throw invalid(why);
  return *q.do_target;
}

// p(c ∩ context) / p(marginal) for every class, from unsmoothed counts.
std::vector<double> correction(const CountStore& store, const Evidence& context,
                               const Evidence::Assignment& marginal) {
  const AttributeSchema& schema = store.schema();
  EventSet denominator_event;
  denominator_event.with(schema, marginal.first, marginal.second);
  const std::uint64_t n_marginal = store.count(denominator_event);
  if (n_marginal == 0) throw Error(ErrorKind::kUndefinedDenominator, "undefined correction denominator");

  const double total = static_cast<double>(store.total_events());
  const double p_marginal = static_cast<double>(n_marginal) / total;
  const EventSet context_event = context.as_event_set(schema);
  std::vector<double> out(schema.class_count());
  for (std::size_t c = 0; c < out.size(); ++c) {
    EventSet with_class;
    with_class.with_class(schema, c);
    const double p_joint = static_cast<double>(store.count(context_event & with_class)) / total;
    out[c] = p_joint / p_marginal;
  }
  return out;
}

bool any_out_of_range(const std::vector<double>& raw) {
  return std::any_of(raw.begin(), raw.end(), [](double r) { return r < 0.0 || r > 1.0; });
}

// Shared by "what if" and "why": Bayes term over the conditioning vector plus
// p(c ∩ context) / p(denominator).
LadderResult intervention_form(const CountStore& store, LadderLevel level, const Evidence& conditioning,
                               const Evidence& context, const Evidence::Assignment& denominator,
                               Smoothing smoothing) {
  LadderResult r;
  r.level = level;
  r.bayes_terms = posterior(store, conditioning, smoothing).scores;
  r.correction_terms = correction(store, context, denominator);
  r.correction_parts.push_back({"outcome", r.correction_terms});
  r.raw_scores.resize(r.bayes_terms.size());
  for (std::size_t c = 0; c < r.raw_scores.size(); ++c) r.raw_scores[c] = r.bayes_terms[c] + r.correction_terms[c];
  r.normalized_scores = clamp_normalize(r.raw_scores);
  r.out_of_range = any_out_of_range(r.raw_scores);
  return r;
}

}  // namespace

std::string_view to_string(LadderLevel level) {
  switch (level) {
    case LadderLevel::kAssociation: return "what-is";
    case LadderLevel::kIntervention: return "what-if";
    case LadderLevel::kRetrospection: return "why";
    case LadderLevel::kCombined: return "retro";
  }
  return "what-is";
}

LadderLevel parse_level(std::string_view text) {
  if (text == "what-is" || text == "association") return LadderLevel::kAssociation;
  if (text == "what-if" || text == "intervention") return LadderLevel::kIntervention;
  if (text == "why" || text == "retrospection") return LadderLevel::kRetrospection;
  if (text == "retro" || text == "combined") return LadderLevel::kCombined;
  throw invalid("unknown ladder level '" + std::string(text) + "'");
}

std::string_view to_string(DenominatorPolicy policy) {
  return policy == DenominatorPolicy::kDoAttribute ? "do" : "last";
}

DenominatorPolicy parse_policy(std::string_view text) {
  if (text == "last" || text == "last-evidence-attribute") return DenominatorPolicy::kLastEvidenceAttribute;
  if (text == "do" || text == "do-attribute") return DenominatorPolicy::kDoAttribute;
  throw invalid("unknown denominator policy '" + std::string(text) + "'");
}

std::string_view to_string(ProductMode mode) { return mode == ProductMode::kLiteralPower ? "power" : "factorized"; }

ProductMode parse_product_mode(std::string_view text) {
  if (text == "factorized") return ProductMode::kFactorized;
  if (text == "power") return ProductMode::kLiteralPower;
  throw invalid("unknown product mode '" + std::string(text) + "'");
}

std::vector<double> clamp_normalize(const std::vector<double>& raw) {
  std::vector<double> out(raw.size());
  double total = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = std::max(0.0, raw[i]);
    total += out[i];
  }
  if (!(total > 0.0) || !std::isfinite(total)) return {};
  for (double& v : out) v /= total;
  return out;
}

LadderResult what_is(const CountStore& store, const LadderQuery& q) {
  LadderResult r;
  r.level = LadderLevel::kAssociation;
  Posterior p = posterior(store, q.evidence_x, q.smoothing);
  r.bayes_terms = p.scores;
  r.raw_scores = p.scores;
  r.normalized_scores = std::move(p.scores);
  r.correction_terms.assign(r.raw_scores.size(), 0.0);
  r.out_of_range = false;
  return r;
}

LadderResult what_if(const CountStore& store, const LadderQuery& q) {
  const auto& target = require_do(q, "what-if requires a do target");
  check_assignment(store.schema(), target);
  const Evidence& outcome = require_outcome(q, "what-if");
  const Evidence x = q.evidence_x.substituted(target.first, target.second);
  const auto& denominator = q.denominator == DenominatorPolicy::kDoAttribute ? target : x.last();
  return intervention_form(store, LadderLevel::kIntervention, x, outcome, denominator, q.smoothing);
}

LadderResult why(const CountStore& store, const LadderQuery& q) {
  Evidence y = require_outcome(q, "why");
  if (q.evidence_x.empty()) throw invalid("why requires non-empty evidence as the correction context");
  if (q.do_target) {
    check_assignment(store.schema(), *q.do_target);
    y = y.substituted(q.do_target->first, q.do_target->second);
  }
  const auto& denominator = q.denominator == DenominatorPolicy::kDoAttribute
                                ? require_do(q, "denominator policy 'do' requires a do target")
                                : y.last();
  return intervention_form(store, LadderLevel::kRetrospection, y, q.evidence_x, denominator, q.smoothing);
}

LadderResult retrospective(const CountStore& store, const LadderQuery& q) {
  const Evidence& y = require_outcome(q, "retro");
  if (q.evidence_x.empty()) throw invalid("retro requires non-empty evidence");
  Evidence x = q.evidence_x;
  if (q.do_target) {
    check_assignment(store.schema(), *q.do_target);
    x = x.substituted(q.do_target->first, q.do_target->second);
  }
  const auto& x_denominator = q.denominator == DenominatorPolicy::kDoAttribute
                                  ? require_do(q, "denominator policy 'do' requires a do target")
                                  : x.last();

  LadderResult r;
  r.level = LadderLevel::kCombined;
  r.bayes_terms = posterior(store, x, q.smoothing).scores;
  if (q.product == ProductMode::kLiteralPower) {
    const double n = static_cast<double>(x.size());
    for (double& b : r.bayes_terms) b = std::pow(b, n);
  }
  const std::vector<double> outcome_part = correction(store, y, y.last());
  std::vector<double> evidence_part = correction(store, x, x_denominator);

  const std::size_t classes = r.bayes_terms.size();
  r.correction_terms.resize(classes);
  r.raw_scores.resize(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    r.correction_terms[c] = outcome_part[c] - evidence_part[c];
    r.raw_scores[c] = r.bayes_terms[c] + r.correction_terms[c];
    evidence_part[c] = -evidence_part[c];
  }
  r.correction_parts.push_back({"outcome", outcome_part});
  r.correction_parts.push_back({"evidence", std::move(evidence_part)});
  r.normalized_scores = clamp_normalize(r.raw_scores);
  r.out_of_range = any_out_of_range(r.raw_scores);
  return r;
}

LadderResult answer(const CountStore& store, const LadderQuery& q) {
  switch (q.level) {
    case LadderLevel::kAssociation: return what_is(store, q);
    case LadderLevel::kIntervention: return what_if(store, q);
    case LadderLevel::kRetrospection: return why(store, q);
    case LadderLevel::kCombined: return retrospective(store, q);
  }
  throw invalid("unknown ladder level");
}

EnvironmentScope environment_scope(const CountStore& store) {
  EnvironmentScope scope;
  const AttributeSchema& schema = store.schema();
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    std::uint64_t observed = 0;
    for (std::size_t v = 0; v < schema.domain_size(a); ++v) {
      if (store.value_marginal(a, v) > 0) ++observed;
    }
    (schema.attributes()[a].role == AttributeRole::kOutcome ? scope.y_n : scope.x_m) += observed;
  }
  return scope;
}

}  // namespace algedon
