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

#include "algedon/json_codec.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "algedon/error.hpp"

namespace algedon {

namespace {

void only_keys(const Json& j, std::initializer_list<std::string_view> allowed, ErrorKind kind,
               const std::string& where) {
  if (!j.is_object()) throw Error(kind, where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) throw Error(kind, where + ": unknown field '" + item.key() + "'");
  }
}

const Json& required(const Json& j, const char* key, ErrorKind kind, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(kind, where + ": missing field '" + key + "'");
  return *it;
}

std::string get_string(const Json& j, ErrorKind kind, const std::string& what) {
  if (!j.is_string()) throw Error(kind, what + " must be a string");
  return j.get<std::string>();
}

double get_number(const Json& j, ErrorKind kind, const std::string& what) {
  if (!j.is_number()) throw Error(kind, what + " must be a number");
  return j.get<double>();
}

RawValue raw_from_json(const Json& j, ErrorKind kind, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.get<double>();
  throw Error(kind, what + " must be a string or number");
}

Json raw_to_json(const RawValue& raw) {
  if (const auto* s = std::get_if<std::string>(&raw)) return *s;
  return std::get<double>(raw);
}

std::shared_ptr<const AttributeSchema> schema_or_path(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return load_schema(base / j.get<std::string>());
  return schema_from_json(j);
}

Evidence evidence_from_json(const AttributeSchema& schema, const Json& j, const std::string& what) {
  std::vector<std::pair<std::string, RawValue>> pairs;
  if (j.is_object()) {
    for (const auto& item : j.items()) {
      pairs.emplace_back(item.key(), raw_from_json(item.value(), ErrorKind::kInvalidQuery, what + "." + item.key()));
    }
  } else if (j.is_array()) {
    for (const Json& pair : j) {
      if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::kInvalidQuery, what + ": expected [name, value] pairs");
      pairs.emplace_back(get_string(pair[0], ErrorKind::kInvalidQuery, what + " attribute"),
                         raw_from_json(pair[1], ErrorKind::kInvalidQuery, what + " value"));
    }
  } else {
    throw Error(ErrorKind::kInvalidQuery, what + " must be an object or an array of pairs");
  }
  return Evidence::from_raw(schema, pairs);
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, "malformed JSON in '" + path.string() + "': " + e.what());
  }
}

std::shared_ptr<const AttributeSchema> schema_from_json(const Json& j) {
  const ErrorKind kind = ErrorKind::kConfig;
  only_keys(j, {"attributes", "classes", "distress_class"}, kind, "schema");
  const Json& attrs = required(j, "attributes", kind, "schema");
  if (!attrs.is_array()) throw Error(kind, "schema: 'attributes' must be an array");
  std::vector<Attribute> attributes;
  for (const Json& a : attrs) {
    only_keys(a, {"name", "kind", "domain", "binning", "role"}, kind, "schema attribute");
    std::string name = get_string(required(a, "name", kind, "schema attribute"), kind, "attribute name");
    std::string kind_text = a.contains("kind") ? get_string(a["kind"], kind, "attribute kind") : "categorical";
    AttributeRole role = AttributeRole::kEvidence;
    if (a.contains("role")) {
      std::string r = get_string(a["role"], kind, "attribute role");
      if (r == "outcome") {
        role = AttributeRole::kOutcome;
      } else if (r != "evidence") {
        throw Error(kind, "attribute '" + name + "': role must be 'evidence' or 'outcome'");
      }
    }
    if (kind_text == "categorical") {
      const Json& domain = required(a, "domain", kind, "attribute '" + name + "'");
      if (!domain.is_array()) throw Error(kind, "attribute '" + name + "': domain must be an array");
      std::vector<std::string> values;
      for (const Json& v : domain) values.push_back(get_string(v, kind, "domain value"));
      attributes.push_back(AttributeSchema::categorical(std::move(name), std::move(values), role));
    } else if (kind_text == "numeric") {
      const Json& b = required(a, "binning", kind, "attribute '" + name + "'");
      only_keys(b, {"min", "max", "bins"}, kind, "binning");
      const Json& bins = required(b, "bins", kind, "binning");
      if (!bins.is_number_integer() || bins.get<std::int64_t>() < 0) throw Error(kind, "binning.bins must be a non-negative integer");
      Binning binning{get_number(required(b, "min", kind, "binning"), kind, "binning.min"),
                      get_number(required(b, "max", kind, "binning"), kind, "binning.max"),
                      bins.get<std::size_t>()};
      attributes.push_back(AttributeSchema::numeric(std::move(name), binning, role));
    } else {
      throw Error(kind, "attribute '" + name + "': kind must be 'categorical' or 'numeric'");
    }
  }
  const Json& cls = required(j, "classes", kind, "schema");
  if (!cls.is_array()) throw Error(kind, "schema: 'classes' must be an array");
  std::vector<std::string> classes;
  for (const Json& c : cls) classes.push_back(get_string(c, kind, "class label"));
  std::string distress = get_string(required(j, "distress_class", kind, "schema"), kind, "distress_class");
  return std::make_shared<const AttributeSchema>(std::move(attributes), std::move(classes), std::move(distress));
}

Json schema_to_json(const AttributeSchema& schema) {
  Json attrs = Json::array();
  for (const Attribute& a : schema.attributes()) {
    Json o = {{"name", a.name}, {"kind", a.kind == AttributeKind::kNumeric ? "numeric" : "categorical"}};
    if (a.kind == AttributeKind::kNumeric) {
      o["binning"] = {{"min", a.binning->min}, {"max", a.binning->max}, {"bins", a.binning->bins}};
    } else {
      o["domain"] = a.domain;
    }
    if (a.role == AttributeRole::kOutcome) o["role"] = "outcome";
    attrs.push_back(std::move(o));
  }
  return {{"attributes", attrs}, {"classes", schema.classes()}, {"distress_class", schema.distress_class()}};
}

std::shared_ptr<const AttributeSchema> load_schema(const std::filesystem::path& path) {
  return schema_from_json(read_json_file(path));
}

EventRecord event_from_json(const Json& j) {
  const ErrorKind kind = ErrorKind::kMalformedRecord;
  only_keys(j, {"unit", "ts", "values", "label"}, kind, "event");
  EventRecord rec;
  rec.unit = get_string(required(j, "unit", kind, "event"), kind, "event.unit");
  const Json& ts = required(j, "ts", kind, "event");
  if (!ts.is_number_integer()) throw Error(kind, "event.ts must be an integer");
  rec.timestamp = ts.get<std::int64_t>();
  const Json& values = required(j, "values", kind, "event");
  if (!values.is_object()) throw Error(kind, "event.values must be an object");
  for (const auto& item : values.items()) {
    rec.values.emplace_back(item.key(), raw_from_json(item.value(), kind, "event.values." + item.key()));
  }
  if (j.contains("label")) rec.label = get_string(j["label"], kind, "event.label");
  return rec;
}

EventRecord parse_event_line(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kMalformedRecord, std::string("malformed JSON: ") + e.what());
  }
  return event_from_json(j);
}

Json event_to_json(const EventRecord& rec) {
  Json values = Json::object();
  for (const auto& [name, raw] : rec.values) values[name] = raw_to_json(raw);
  Json j = {{"unit", rec.unit}, {"ts", rec.timestamp}, {"values", values}};
  if (rec.label) j["label"] = *rec.label;
  return j;
}

HierarchyConfig hierarchy_from_json(const Json& j) {
  const ErrorKind kind = ErrorKind::kConfig;
  only_keys(j, {"units", "tau", "k", "window", "aggregation", "smoothing"}, kind, "hierarchy");
  HierarchyConfig out;
  const Json& units = required(j, "units", kind, "hierarchy");
  if (!units.is_array()) throw Error(kind, "hierarchy: 'units' must be an array");
  for (const Json& u : units) {
    only_keys(u, {"id", "level", "parent"}, kind, "hierarchy unit");
    UnitSpec spec;
    spec.id = get_string(required(u, "id", kind, "unit"), kind, "unit id");
    const Json& level = required(u, "level", kind, "unit '" + spec.id + "'");
    if (!level.is_number_integer()) throw Error(kind, "unit '" + spec.id + "': level must be an integer");
    spec.level = level.get<int>();
    if (u.contains("parent") && !u["parent"].is_null()) spec.parent = get_string(u["parent"], kind, "unit parent");
    out.units.push_back(std::move(spec));
  }
  if (j.contains("tau")) out.monitor.tau = get_number(j["tau"], kind, "tau");
  auto positive = [&](const char* key, std::size_t& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer() || j[key].get<std::int64_t>() < 1) {
      throw Error(kind, std::string("hierarchy: '") + key + "' must be a positive integer");
    }
    field = j[key].get<std::size_t>();
  };
  positive("k", out.monitor.persistence);
  positive("window", out.monitor.window);
  if (j.contains("aggregation")) {
    std::string mode = get_string(j["aggregation"], kind, "aggregation");
    if (mode == "max") {
      out.monitor.aggregation = AggregationMode::kMax;
    } else if (mode != "mean") {
      throw Error(kind, "aggregation must be 'mean' or 'max'");
    }
  }
  if (j.contains("smoothing")) {
    try {
      out.monitor.smoothing = parse_smoothing(get_string(j["smoothing"], kind, "smoothing"));
    } catch (const Error& e) {
      throw Error(kind, e.what());
    }
  }
  out.monitor.validate();
  Hierarchy{out.units};  // structural validation: levels, parents, duplicates
  return out;
}

HierarchyConfig load_hierarchy(const std::filesystem::path& path) { return hierarchy_from_json(read_json_file(path)); }

Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const ErrorKind kind = ErrorKind::kConfig;
  only_keys(j, {"seed", "schema", "hierarchy", "profiles", "training_per_class", "label_stream", "segments"}, kind,
            "scenario");
  Scenario s;
  const Json& seed = required(j, "seed", kind, "scenario");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw Error(kind, "scenario: seed must be a non-negative integer");
  }
  s.seed = seed.get<std::uint64_t>();
  s.schema = schema_or_path(required(j, "schema", kind, "scenario"), base_dir);
  const Json& hier = required(j, "hierarchy", kind, "scenario");
  HierarchyConfig hc = hier.is_string() ? load_hierarchy(base_dir / hier.get<std::string>()) : hierarchy_from_json(hier);
  s.units = std::move(hc.units);
  s.config = hc.monitor;
  Hierarchy hierarchy(s.units);

  const AttributeSchema& schema = *s.schema;
  s.profiles.assign(schema.class_count(), std::vector<ValueProfile>(schema.attribute_count()));
  if (j.contains("profiles")) {
    const Json& profiles = j["profiles"];
    if (!profiles.is_object()) throw Error(kind, "scenario: 'profiles' must be an object");
    for (const auto& [label, per_attr] : profiles.items()) {
      auto c = schema.find_class(label);
      if (!c) throw Error(kind, "scenario: profile for unknown class '" + label + "'");
      if (!per_attr.is_object()) throw Error(kind, "scenario: profile '" + label + "' must be an object");
      for (const auto& [name, spec] : per_attr.items()) {
        auto a = schema.find_attribute(name);
        if (!a) throw Error(kind, "scenario: profile names unknown attribute '" + name + "'");
        ValueProfile& profile = s.profiles[*c][*a];
        if (!spec.is_object()) throw Error(kind, "scenario: profile '" + label + "." + name + "' must be an object");
        if (spec.contains("range")) {
          const Json& r = spec["range"];
          if (schema.attributes()[*a].kind != AttributeKind::kNumeric || !r.is_array() || r.size() != 2) {
            throw Error(kind, "scenario: 'range' needs a numeric attribute and [lo, hi]");
          }
          profile.range = std::make_pair(get_number(r[0], kind, "range.lo"), get_number(r[1], kind, "range.hi"));
          if (!(profile.range->first <= profile.range->second)) throw Error(kind, "scenario: range needs lo <= hi");
          continue;
        }
        profile.weights.assign(schema.domain_size(*a), 0.0);
        double total = 0.0;
        for (const auto& [value, w] : spec.items()) {
          auto v = schema.find_value(*a, value);
          if (!v) throw Error(kind, "scenario: '" + value + "' is not a value of '" + name + "'");
          const double weight = get_number(w, kind, "profile weight");
          if (!(weight >= 0.0)) throw Error(kind, "scenario: weights must be non-negative");
          profile.weights[*v] = weight;
          total += weight;
        }
        if (!(total > 0.0)) throw Error(kind, "scenario: profile '" + label + "." + name + "' has no positive weight");
      }
    }
  }
  if (j.contains("training_per_class")) {
    const Json& t = j["training_per_class"];
    if (!t.is_number_integer() || t.get<std::int64_t>() < 0) throw Error(kind, "scenario: training_per_class must be >= 0");
    s.training_per_class = t.get<std::size_t>();
  }
  if (j.contains("label_stream")) {
    if (!j["label_stream"].is_boolean()) throw Error(kind, "scenario: label_stream must be a boolean");
    s.label_stream = j["label_stream"].get<bool>();
  }
  const Json& segments = required(j, "segments", kind, "scenario");
  if (!segments.is_object()) throw Error(kind, "scenario: 'segments' must be an object keyed by unit");
  for (const auto& [unit, list] : segments.items()) {
    if (!hierarchy.contains(unit)) throw Error(kind, "scenario: segments for unknown unit '" + unit + "'");
    if (!hierarchy.is_leaf(unit)) throw Error(kind, "scenario: unit '" + unit + "' is not a level-1 unit");
    if (!list.is_array()) throw Error(kind, "scenario: segments of '" + unit + "' must be an array");
    auto& out = s.segments[unit];
    for (const Json& seg : list) {
      only_keys(seg, {"start", "end", "interval", "mixture"}, kind, "segment");
      Segment segment;
      auto integer = [&](const char* key) {
        const Json& v = required(seg, key, kind, "segment");
        if (!v.is_number_integer()) throw Error(kind, std::string("segment.") + key + " must be an integer");
        return v.get<std::int64_t>();
      };
      segment.start = integer("start");
      segment.end = integer("end");
      segment.interval = seg.contains("interval") ? integer("interval") : 1000;
      if (segment.start < 0 || segment.end < segment.start || segment.interval < 1) {
        throw Error(kind, "segment needs 0 <= start <= end and interval >= 1");
      }
      if (!out.empty() && segment.start < out.back().end) throw Error(kind, "segments of '" + unit + "' overlap");
      segment.mixture.assign(schema.class_count(), 0.0);
      double total = 0.0;
      const Json& mixture = required(seg, "mixture", kind, "segment");
      if (!mixture.is_object()) throw Error(kind, "segment.mixture must be an object");
      for (const auto& [label, w] : mixture.items()) {
        auto c = schema.find_class(label);
        if (!c) throw Error(kind, "segment.mixture names unknown class '" + label + "'");
        const double weight = get_number(w, kind, "mixture weight");
        if (!(weight >= 0.0)) throw Error(kind, "mixture weights must be non-negative");
        segment.mixture[*c] = weight;
        total += weight;
      }
      if (!(total > 0.0)) throw Error(kind, "segment.mixture has no positive weight");
      out.push_back(std::move(segment));
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path), path.parent_path());
}

TargetedQuery query_from_json(const AttributeSchema& schema, const Json& j) {
  const ErrorKind kind = ErrorKind::kInvalidQuery;
  only_keys(j, {"level", "evidence", "outcome", "do", "denominator", "smoothing", "product", "unit"}, kind, "query");
  TargetedQuery out;
  LadderQuery& q = out.query;
  q.level = parse_level(get_string(required(j, "level", kind, "query"), kind, "query.level"));
  if (j.contains("evidence")) q.evidence_x = evidence_from_json(schema, j["evidence"], "query.evidence");
  if (j.contains("outcome") && !j["outcome"].is_null()) {
    q.outcome_y = evidence_from_json(schema, j["outcome"], "query.outcome");
  }
  if (j.contains("do") && !j["do"].is_null()) {
    Evidence target = evidence_from_json(schema, j["do"], "query.do");
    if (target.size() != 1) throw Error(kind, "query.do must hold exactly one assignment");
    q.do_target = target.last();
  }
  if (j.contains("denominator")) q.denominator = parse_policy(get_string(j["denominator"], kind, "query.denominator"));
  if (j.contains("smoothing")) q.smoothing = parse_smoothing(get_string(j["smoothing"], kind, "query.smoothing"));
  if (j.contains("product")) q.product = parse_product_mode(get_string(j["product"], kind, "query.product"));
  if (j.contains("unit") && !j["unit"].is_null()) out.unit = get_string(j["unit"], kind, "query.unit");
  return out;
}

Json evidence_to_json(const AttributeSchema& schema, const Evidence& e) {
  Json out = Json::object();
  for (const auto& [a, v] : e.assignments()) out[schema.attributes()[a].name] = schema.attributes()[a].domain[v];
  return out;
}

Json query_to_json(const AttributeSchema& schema, const TargetedQuery& tq) {
  const LadderQuery& q = tq.query;
  Json j = {{"level", to_string(q.level)}, {"evidence", evidence_to_json(schema, q.evidence_x)}};
  if (q.outcome_y) j["outcome"] = evidence_to_json(schema, *q.outcome_y);
  if (q.do_target) {
    const Attribute& a = schema.attributes()[q.do_target->first];
    j["do"] = {{a.name, a.domain[q.do_target->second]}};
  }
  j["denominator"] = to_string(q.denominator);
  j["smoothing"] = to_string(q.smoothing);
  j["product"] = to_string(q.product);
  if (tq.unit) j["unit"] = *tq.unit;
  return j;
}

Json class_map(const AttributeSchema& schema, const std::vector<double>& per_class) {
  Json out = Json::object();
  for (std::size_t c = 0; c < per_class.size() && c < schema.class_count(); ++c) out[schema.classes()[c]] = per_class[c];
  return out;
}

Json result_to_json(const AttributeSchema& schema, const LadderResult& r) {
  Json j = {{"level", to_string(r.level)},
            {"raw_scores", class_map(schema, r.raw_scores)},
            {"normalized_scores", class_map(schema, r.normalized_scores)},
            {"correction_terms", class_map(schema, r.correction_terms)},
            {"bayes_terms", class_map(schema, r.bayes_terms)}};
  Json parts = Json::object();
  for (const CorrectionPart& p : r.correction_parts) parts[p.name] = class_map(schema, p.values);
  j["correction_parts"] = std::move(parts);
  j["out_of_range"] = r.out_of_range;
  return j;
}

Json signal_to_json(const AlgedonicSignal& s) {
  return {{"unit", s.unit},         {"timestamp", s.timestamp},       {"severity", s.severity},
          {"streak", s.streak},     {"escalated_to", s.escalated_to}, {"route", s.route}};
}

Json status_to_json(const AttributeSchema& schema, const UnitStatus& s) {
  Json j = {{"unit", s.id}, {"level", s.level}};
  j["posterior"] = s.posterior ? class_map(schema, *s.posterior) : Json(nullptr);
  j["window"] = s.window;
  j["streak"] = s.streak;
  j["stability"] = s.stability ? Json{{"mean", s.stability->mean}, {"stddev", s.stability->stddev}} : Json(nullptr);
  return j;
}

Json report_to_json(const AttributeSchema& schema, const AdvisoryReport& report) {
  Json units = Json::array();
  for (const UnitStatus& u : report.units) units.push_back(status_to_json(schema, u));
  Json signals = Json::array();
  for (const AlgedonicSignal& s : report.active_signals) signals.push_back(signal_to_json(s));
  Json queries = Json::array();
  for (const AnsweredQuery& q : report.queries) {
    Json entry = {{"query", query_to_json(schema, q.query)}};
    if (q.result) entry["result"] = result_to_json(schema, *q.result);
    if (q.error) entry["error"] = *q.error;
    queries.push_back(std::move(entry));
  }
  return {{"advisory_only", AdvisoryReport::advisory_only},
          {"timestamp", report.timestamp},
          {"units", std::move(units)},
          {"active_signals", std::move(signals)},
          {"queries", std::move(queries)}};
}

}  // namespace algedon
