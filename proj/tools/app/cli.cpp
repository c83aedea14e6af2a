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

#include "cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "algedon/error.hpp"
#include "algedon/json_codec.hpp"
#include "routes.hpp"
#include "server.hpp"

namespace algedon::app {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::pair<std::string, RawValue>> parse_pairs(const std::string& text, const char* flag) {
  std::vector<std::pair<std::string, RawValue>> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError(std::string(flag) + ": expected key=value, got '" + item + "'");
    }
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << std::left << std::setw(static_cast<int>(width[i] + 2)) << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

std::string fixed(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

struct TrainArgs {
  std::string schema;
  std::string events;
  std::string smoothing = "on";
  bool strict = false;
  bool pretty = false;
};

int run_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  const Smoothing smoothing = parse_smoothing(args.smoothing);
  auto schema = load_schema(args.schema);
  IngestResult ingested = ingest_file(args.events, schema);
  const CountStore& store = *ingested.store;

  Json priors = Json::object();
  if (store.labeled_events() > 0) {
    for (std::size_t c = 0; c < schema->class_count(); ++c) {
      priors[schema->classes()[c]] = prior(store, c, smoothing);
    }
  }
  Json reasons = Json::array();
  for (const RejectedLine& r : ingested.stats.reject_reasons) {
    reasons.push_back({{"line", r.line}, {"reason", r.reason}});
    err << args.events << ":" << r.line << ": rejected: " << r.reason << '\n';
  }
  if (args.pretty) {
    out << "accepted " << ingested.stats.accepted << ", rejected " << ingested.stats.rejected << ", labeled "
        << store.labeled_events() << "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [label, p] : priors.items()) rows.push_back({label, fixed(p.get<double>())});
    print_table(out, {"class", "prior"}, rows);
  } else {
    print_json(out, {{"accepted", ingested.stats.accepted},
                     {"rejected", ingested.stats.rejected},
                     {"reject_reasons", reasons},
                     {"total_events", store.total_events()},
                     {"labeled_events", store.labeled_events()},
                     {"smoothing", to_string(smoothing)},
                     {"priors", priors}});
  }
  if (args.strict && ingested.stats.rejected > 0) return kExitStrictRejection;
  return kExitOk;
}

struct QueryArgs {
  std::string schema;
  std::string events;
  std::string level;
  std::string evidence;
  std::string do_target;
  std::string outcome;
  std::string denominator = "last";
  std::string smoothing = "on";
  std::string product = "factorized";
  std::string unit;
  bool pretty = false;
};

int run_query(const QueryArgs& args, std::ostream& out, std::ostream& err) {
  // Usage checks come before any file is touched.
  const LadderLevel level = [&] {
    try {
      return parse_level(args.level);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  if (level == LadderLevel::kIntervention && args.do_target.empty()) throw UsageError("what-if requires --do");
  if (level != LadderLevel::kAssociation && args.outcome.empty()) {
    throw UsageError(std::string(to_string(level)) + " requires --outcome");
  }
  if (args.denominator == "do" && args.do_target.empty()) throw UsageError("--denominator do requires --do");
  const auto evidence_pairs = parse_pairs(args.evidence, "--evidence");
  const auto outcome_pairs = parse_pairs(args.outcome, "--outcome");
  const auto do_pairs = parse_pairs(args.do_target, "--do");
  if (do_pairs.size() > 1) throw UsageError("--do takes a single key=value");

  auto schema = load_schema(args.schema);
  IngestResult ingested = ingest_file(args.events, schema);
  if (ingested.stats.rejected > 0) {
    err << "note: " << ingested.stats.rejected << " event line(s) rejected\n";
  }
  std::shared_ptr<const CountStore> store = ingested.store;
  if (!args.unit.empty()) {
    EventIngestor unit_store(schema);
    for (const EventRecord& rec : ingested.records) {
      if (rec.unit == args.unit) unit_store.ingest(rec);
    }
    store = unit_store.snapshot();
  }

  LadderResult result;
  try {
    LadderQuery q;
    q.level = level;
    q.evidence_x = Evidence::from_raw(*schema, evidence_pairs);
    if (!outcome_pairs.empty()) q.outcome_y = Evidence::from_raw(*schema, outcome_pairs);
    if (!do_pairs.empty()) q.do_target = Evidence::from_raw(*schema, do_pairs).last();
    q.denominator = parse_policy(args.denominator);
    q.smoothing = parse_smoothing(args.smoothing);
    q.product = parse_product_mode(args.product);
    result = answer(*store, q);
  } catch (const Error& e) {
    err << "query failed: " << e.what() << '\n';
    return kExitQueryPrecondition;
  }

  if (args.pretty) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t c = 0; c < schema->class_count(); ++c) {
      rows.push_back({schema->classes()[c], fixed(result.bayes_terms[c]), fixed(result.correction_terms[c]),
                      fixed(result.raw_scores[c]),
                      result.normalized_scores.empty() ? "-" : fixed(result.normalized_scores[c])});
    }
    out << to_string(result.level) << (result.out_of_range ? " (raw scores out of range)" : "") << "\n";
    print_table(out, {"class", "bayes", "correction", "raw", "normalized"}, rows);
  } else {
    print_json(out, result_to_json(*schema, result));
  }
  return kExitOk;
}

int run_simulate(const std::string& scenario_path, const std::string& out_dir, std::ostream& out) {
  const Scenario scenario = load_scenario(scenario_path);
  const SimulationOutput result = run_scenario(scenario);
  write_simulation(result, *scenario.schema, out_dir);
  print_json(out, {{"events", result.events.size()},
                   {"signals", result.signals.size()},
                   {"seed", scenario.seed},
                   {"out", out_dir}});
  return kExitOk;
}

int run_serve(const std::string& config_path, std::ostream& out) {
  const RunConfig config = load_run_config(config_path);
  spdlog::set_default_logger(spdlog::stderr_color_mt("algedon"));
  spdlog::set_level(spdlog::level::from_str(config.log_level));

  auto schema = load_schema(config.schema);
  HierarchyConfig hc = load_hierarchy(config.hierarchy);
  Monitor monitor(schema, Hierarchy(hc.units), hc.monitor);

  if (config.events) {
    std::ifstream in(*config.events);
    if (!in) throw Error(ErrorKind::kIo, "cannot read events file '" + config.events->string() + "'");
    std::string line;
    std::size_t accepted = 0, rejected = 0;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        monitor.update(parse_event_line(line));
        ++accepted;
      } catch (const Error& e) {
        ++rejected;
        spdlog::warn("replay rejected: {}", e.what());
      }
    }
    spdlog::info("replayed {} events ({} rejected)", accepted, rejected);
  }

  // Block termination signals before any server thread exists, then wait for one.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Server server(monitor, config.bind, static_cast<std::uint16_t>(config.port));
  connect_stream(monitor, server);
  server.start();

  int received = 0;
  sigwait(&signals, &received);
  spdlog::info("received signal {}, shutting down", received);
  server.stop();
  monitor.set_listener(nullptr);

  const Json report = report_to_json(monitor.schema(), monitor.report());
  print_json(out, report);
  if (config.report_path) {
    std::ofstream file(*config.report_path, std::ios::trunc);
    if (!file) throw Error(ErrorKind::kIo, "cannot write report to '" + config.report_path->string() + "'");
    file << report.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  const std::filesystem::path base = path.parent_path();
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "serve config must be a JSON object");
  RunConfig config;
  auto resolve = [&](const char* key) -> std::filesystem::path {
    if (!j.contains(key) || !j[key].is_string()) {
      throw Error(ErrorKind::kConfig, std::string("serve config: '") + key + "' must be a path string");
    }
    std::filesystem::path p = j[key].get<std::string>();
    if (p.is_relative()) p = base / p;
    if (!std::filesystem::exists(p)) throw Error(ErrorKind::kIo, "serve config: '" + p.string() + "' does not exist");
    return p;
  };
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key != "schema" && key != "hierarchy" && key != "events" && key != "bind" && key != "port" &&
        key != "log_level" && key != "report_path") {
      throw Error(ErrorKind::kConfig, "serve config: unknown field '" + key + "'");
    }
  }
  config.schema = resolve("schema");
  config.hierarchy = resolve("hierarchy");
  if (j.contains("events")) config.events = resolve("events");
  if (j.contains("bind")) config.bind = j["bind"].get<std::string>();
  if (j.contains("port")) {
    if (!j["port"].is_number_integer()) throw Error(ErrorKind::kConfig, "serve config: port must be an integer");
    config.port = j["port"].get<int>();
  }
  if (config.port < 1 || config.port > 65535) throw Error(ErrorKind::kConfig, "serve config: port must be in [1, 65535]");
  if (j.contains("log_level")) config.log_level = j["log_level"].get<std::string>();
  if (j.contains("report_path")) {
    std::filesystem::path p = j["report_path"].get<std::string>();
    config.report_path = p.is_relative() ? base / p : p;
  }
  return config;
}

int run_cli(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
  CLI::App app{"algedon: streaming naive Bayes monitor with causal-ladder queries (advisory only)"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Build a count store from an event file and print priors");
  train_cmd->add_option("--schema", train.schema, "Schema JSON file")->required();
  train_cmd->add_option("--events", train.events, "Line-delimited JSON events")->required();
  train_cmd->add_option("--smoothing", train.smoothing, "on | off | laplace")->check(CLI::IsMember({"on", "off", "laplace"}));
  train_cmd->add_flag("--strict", train.strict, "Exit 2 if any line was rejected");
  train_cmd->add_flag("--pretty", train.pretty, "Human-readable table instead of JSON");

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Answer a what-is / what-if / why / retro query");
  query_cmd->add_option("--schema", query.schema, "Schema JSON file")->required();
  query_cmd->add_option("--events", query.events, "Line-delimited JSON events")->required();
  query_cmd->add_option("--level", query.level, "what-is | what-if | why | retro")->required();
  query_cmd->add_option("--evidence", query.evidence, "k=v,... (the x vector)");
  query_cmd->add_option("--do", query.do_target, "k=v intervention target");
  query_cmd->add_option("--outcome", query.outcome, "k=v,... (the y vector)");
  query_cmd->add_option("--denominator", query.denominator, "last | do")->check(CLI::IsMember({"last", "do"}));
  query_cmd->add_option("--smoothing", query.smoothing, "on | off | laplace")->check(CLI::IsMember({"on", "off", "laplace"}));
  query_cmd->add_option("--product", query.product, "factorized | power")->check(CLI::IsMember({"factorized", "power"}));
  query_cmd->add_option("--unit", query.unit, "Restrict the store to one unit's events");
  query_cmd->add_flag("--pretty", query.pretty, "Human-readable table instead of JSON");

  std::string scenario, out_dir;
  auto* sim_cmd = app.add_subcommand("simulate", "Replay a seeded synthetic scenario through the monitor");
  sim_cmd->add_option("--scenario", scenario, "Scenario JSON file")->required();
  sim_cmd->add_option("--out", out_dir, "Output directory")->required();

  std::string config_path;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP/WebSocket service");
  serve_cmd->add_option("--config", config_path, "Service config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*train_cmd) return run_train(train, out, err);
    if (*query_cmd) return run_query(query, out, err);
    if (*sim_cmd) return run_simulate(scenario, out_dir, out);
    if (*serve_cmd) return run_serve(config_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_query_precondition(e.kind()) ? kExitQueryPrecondition : kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace algedon::app
