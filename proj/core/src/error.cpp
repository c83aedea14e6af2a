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

#include "algedon/error.hpp"

namespace algedon {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNoObservations: return "no_observations";
    case ErrorKind::kSchemaViolation: return "schema_violation";
    case ErrorKind::kNullConditioning: return "null_conditioning";
    case ErrorKind::kZeroMarginal: return "zero_marginal";
    case ErrorKind::kInconsistentProbability: return "inconsistent_probability";
    case ErrorKind::kUnknownClass: return "unknown_class";
    case ErrorKind::kVanishingPosterior: return "vanishing_posterior";
    case ErrorKind::kUndefinedDenominator: return "undefined_denominator";
    case ErrorKind::kInvalidQuery: return "invalid_query";
    case ErrorKind::kOutOfOrder: return "out_of_order";
    case ErrorKind::kMalformedRecord: return "malformed_record";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kNoChildren: return "no_children";
    case ErrorKind::kOrphanUnit: return "orphan_unit";
    case ErrorKind::kUnknownUnit: return "unknown_unit";
  }
  return "unknown";
}

bool is_query_precondition(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNoObservations:
    case ErrorKind::kNullConditioning:
    case ErrorKind::kZeroMarginal:
    case ErrorKind::kInconsistentProbability:
    case ErrorKind::kVanishingPosterior:
    case ErrorKind::kUndefinedDenominator:
    case ErrorKind::kInvalidQuery:
      return true;
    default:
      return false;
  }
}

}  // namespace algedon
