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

#include <string>
#include <string_view>

#include "algedon/json_codec.hpp"
#include "algedon/monitor.hpp"

namespace algedon::app {

struct HttpReply {
  int status = 200;
  Json body;
};

/// Transport-independent request handling for the service endpoints:
///   POST /events, POST /query, GET /units/{id}/status, GET /alerts?since=ts,
///   GET /report (POST /report attaches {"queries": [...]}).
HttpReply handle_request(Monitor& monitor, std::string_view method, std::string_view target, std::string_view body);

/// WebSocket frame {"type": ..., "payload": ...} for a monitor update.
Json posterior_frame(const AttributeSchema& schema, const UpdateOutcome& outcome);
Json signal_frame(const AlgedonicSignal& signal);
Json report_frame(const AttributeSchema& schema, const AdvisoryReport& report);

}  // namespace algedon::app
