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

#include "algedon/count_store.hpp"

namespace algedon {

/// count(s) / total_events.
double joint_probability(const CountStore& store, const EventSet& s);

/// count(target ∧ given) / count(given).
double conditional(const CountStore& store, const EventSet& target, const EventSet& given);

/// p(a|b) p(b) / p(a). Results above 1 by more than 1e-9 are rejected as an
/// inconsistent triple instead of being clamped.
double bayes_invert(double p_a_given_b, double p_a, double p_b);

/// P(a|b) - P(a). Zero certifies empirical independence; the caller picks the tolerance.
double independence_gap(const CountStore& store, const EventSet& a, const EventSet& b);

}  // namespace algedon
