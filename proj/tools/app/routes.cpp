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

#include "routes.hpp"

#include <charconv>
#include <optional>

#include "algedon/error.hpp"

namespace algedon::app {

namespace {

HttpReply error_reply(int status, const std::string& message, std::string_view kind) {
  return {status, Json{{"error", message}, {"kind", kind}}};
}

std::optional<Json> parse_body(std::string_view body) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

// Returns the value of `key` in a query string, if present.
std::optional<std::string_view> query_param(std::string_view query, std::string_view key) {
  std::size_t start = 0;
  while (start < query.size()) {
    std::size_t end = start;
    while (end < query.size() && query[end] != '&') ++end;
    const std::string_view pair = query.substr(start, end - start);
    const std::size_t eq = pair.find('=');
    if (pair.substr(0, eq) == key) return eq == std::string_view::npos ? std::string_view{} : pair.substr(eq + 1);
    start = end + 1;
  }
  return std::nullopt;
}

HttpReply post_event(Monitor& monitor, std::string_view body) {
  auto json = parse_body(body);
  if (!json) return error_reply(400, "malformed JSON body", "malformed_record");
  try {
    const UpdateOutcome outcome = monitor.update(event_from_json(*json));
    Json reply = {{"accepted", true}, {"unit", outcome.unit}, {"timestamp", outcome.timestamp}};
    reply["posterior"] = outcome.posterior ? class_map(monitor.schema(), *outcome.posterior) : Json(nullptr);
    reply["signal"] = outcome.signal ? signal_to_json(*outcome.signal) : Json(nullptr);
    return {202, std::move(reply)};
  } catch (const Error& e) {
    return error_reply(400, e.what(), to_string(e.kind()));
  }
}

HttpReply post_query(Monitor& monitor, std::string_view body) {
  auto json = parse_body(body);
  if (!json) return error_reply(400, "malformed JSON body", "invalid_query");
  try {
    const TargetedQuery q = query_from_json(monitor.schema(), *json);
    return {200, result_to_json(monitor.schema(), monitor.query(q))};
  } catch (const Error& e) {
    return error_reply(e.kind() == ErrorKind::kUnknownUnit ? 404 : 422, e.what(), to_string(e.kind()));
  }
}

HttpReply report(Monitor& monitor, std::string_view body) {
  std::vector<TargetedQuery> queries;
  if (!body.empty()) {
    auto json = parse_body(body);
    if (!json || !json->is_object()) return error_reply(400, "malformed JSON body", "invalid_query");
    try {
      if (json->contains("queries")) {
        for (const Json& q : (*json)["queries"]) queries.push_back(query_from_json(monitor.schema(), q));
      }
    } catch (const Error& e) {
      return error_reply(422, e.what(), to_string(e.kind()));
    }
  }
  return {200, report_to_json(monitor.schema(), monitor.report(queries))};
}

HttpReply alerts(Monitor& monitor, std::string_view query) {
  std::int64_t since = std::numeric_limits<std::int64_t>::min();
  if (auto text = query_param(query, "since")) {
    auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), since);
    if (ec != std::errc() || ptr != text->data() + text->size()) {
      return error_reply(400, "since must be an integer timestamp", "invalid_query");
    }
  }
  Json list = Json::array();
  for (const AlgedonicSignal& s : monitor.signals_since(since)) list.push_back(signal_to_json(s));
  return {200, std::move(list)};
}

}  // namespace

HttpReply handle_request(Monitor& monitor, std::string_view method, std::string_view target, std::string_view body) {
  std::string_view path = target;
  std::string_view query;
  if (auto q = target.find('?'); q != std::string_view::npos) {
    path = target.substr(0, q);
    query = target.substr(q + 1);
  }

  if (path == "/events") {
    if (method != "POST") return error_reply(405, "use POST", "method");
    return post_event(monitor, body);
  }
  if (path == "/query") {
    if (method != "POST") return error_reply(405, "use POST", "method");
    return post_query(monitor, body);
  }
  if (path == "/report") {
    if (method != "GET" && method != "POST") return error_reply(405, "use GET or POST", "method");
    return report(monitor, method == "POST" ? body : std::string_view{});
  }
  if (path == "/alerts") {
    if (method != "GET") return error_reply(405, "use GET", "method");
    return alerts(monitor, query);
  }
  constexpr std::string_view kUnits = "/units/";
  constexpr std::string_view kStatus = "/status";
  if (path.starts_with(kUnits) && path.ends_with(kStatus) && path.size() > kUnits.size() + kStatus.size()) {
    if (method != "GET") return error_reply(405, "use GET", "method");
    const std::string id(path.substr(kUnits.size(), path.size() - kUnits.size() - kStatus.size()));
    try {
      return {200, status_to_json(monitor.schema(), monitor.status(id))};
    } catch (const Error& e) {
      return error_reply(404, e.what(), to_string(e.kind()));
    }
  }
  return error_reply(404, "no such endpoint", "not_found");
}

Json posterior_frame(const AttributeSchema& schema, const UpdateOutcome& outcome) {
  Json payload = {{"unit", outcome.unit}, {"timestamp", outcome.timestamp}};
  payload["posterior"] = outcome.posterior ? class_map(schema, *outcome.posterior) : Json(nullptr);
  return {{"type", "posterior"}, {"payload", std::move(payload)}};
}

Json signal_frame(const AlgedonicSignal& signal) {
  return {{"type", "signal"}, {"payload", signal_to_json(signal)}};
}

Json report_frame(const AttributeSchema& schema, const AdvisoryReport& report) {
  return {{"type", "report"}, {"payload", report_to_json(schema, report)}};
}

}  // namespace algedon::app
