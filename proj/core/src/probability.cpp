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

#include "algedon/probability.hpp"

#include "algedon/error.hpp"

namespace algedon {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kInconsistentProbability, std::string("probability out of range: ") + name);
  }
}

}  // namespace

double joint_probability(const CountStore& store, const EventSet& s) {
  if (store.total_events() == 0) throw Error(ErrorKind::kNoObservations, "no observations");
  return static_cast<double>(store.count(s)) / static_cast<double>(store.total_events());
}

double conditional(const CountStore& store, const EventSet& target, const EventSet& given) {
  const std::uint64_t n_given = store.count(given);
  if (n_given == 0) throw Error(ErrorKind::kNullConditioning, "conditioning on null event");
  return static_cast<double>(store.count(target & given)) / static_cast<double>(n_given);
}

double bayes_invert(double p_a_given_b, double p_a, double p_b) {
  check_probability(p_a_given_b, "p(a|b)");
  check_probability(p_a, "p(a)");
  check_probability(p_b, "p(b)");
  if (p_a == 0.0) throw Error(ErrorKind::kZeroMarginal, "zero marginal");
  const double result = p_a_given_b * p_b / p_a;
  if (result > 1.0 + 1e-9) {
    throw Error(ErrorKind::kInconsistentProbability,
                "inconsistent probability triple (implies " + std::to_string(result) + ")");
  }
  // Within tolerance above 1 is rounding, not inconsistency.
  return result > 1.0 ? 1.0 : result;
}

double independence_gap(const CountStore& store, const EventSet& a, const EventSet& b) {
  return conditional(store, a, b) - joint_probability(store, a);
}

}  // namespace algedon
