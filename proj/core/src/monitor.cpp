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

#include "algedon/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "algedon/error.hpp"

namespace algedon {

Hierarchy::Hierarchy(std::vector<UnitSpec> units) : units_(std::move(units)) {
  if (units_.empty()) throw Error(ErrorKind::kConfig, "hierarchy has no units");
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const UnitSpec& u = units_[i];
    if (u.id.empty()) throw Error(ErrorKind::kConfig, "unit with empty id");
    if (u.level < 1) throw Error(ErrorKind::kConfig, "unit '" + u.id + "' has level < 1");
    if (!index_.emplace(u.id, i).second) throw Error(ErrorKind::kConfig, "duplicate unit '" + u.id + "'");
    children_[u.id];
    max_level_ = std::max(max_level_, u.level);
  }
  for (const UnitSpec& u : units_) {
    if (!u.parent) continue;
    auto it = index_.find(*u.parent);
    if (it == index_.end()) {
      throw Error(ErrorKind::kOrphanUnit, "unit '" + u.id + "' names missing parent '" + *u.parent + "'");
    }
    if (units_[it->second].level != u.level + 1) {
      throw Error(ErrorKind::kConfig, "parent '" + *u.parent + "' of unit '" + u.id + "' is not exactly one level above");
    }
    children_[*u.parent].push_back(u.id);
  }
}

const UnitSpec& Hierarchy::unit(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorKind::kUnknownUnit, "unknown unit '" + id + "'");
  return units_[it->second];
}

const std::vector<std::string>& Hierarchy::children(const std::string& id) const {
  auto it = children_.find(id);
  if (it == children_.end()) throw Error(ErrorKind::kUnknownUnit, "unknown unit '" + id + "'");
  return it->second;
}

void MonitorConfig::validate() const {
  if (!(tau >= 0.0 && tau <= 1.0)) throw Error(ErrorKind::kConfig, "tau must lie in [0, 1]");
  if (window < 1) throw Error(ErrorKind::kConfig, "window must be >= 1");
  if (persistence < 1) throw Error(ErrorKind::kConfig, "k must be >= 1");
  if (persistence > window) throw Error(ErrorKind::kConfig, "k must not exceed the window size");
}

std::optional<std::size_t> PersistenceGate::push(double distress) {
  streak_ = distress >= tau_ ? streak_ + 1 : 0;
  if (streak_ >= persistence_) return streak_;
  return std::nullopt;
}

std::vector<double> aggregate(std::span<const std::vector<double>> child_posteriors, AggregationMode mode) {
  if (child_posteriors.empty()) throw Error(ErrorKind::kNoChildren, "aggregate needs at least one child");
  const std::size_t classes = child_posteriors.front().size();
  std::vector<double> out(classes, 0.0);
  for (const auto& child : child_posteriors) {
    if (child.size() != classes) throw Error(ErrorKind::kConfig, "child posteriors disagree on class count");
    for (std::size_t c = 0; c < classes; ++c) {
      out[c] = mode == AggregationMode::kMax ? std::max(out[c], child[c]) : out[c] + child[c];
    }
  }
  if (mode == AggregationMode::kMean) {
    for (double& v : out) v /= static_cast<double>(child_posteriors.size());
  }
  double total = 0.0;
  for (double v : out) total += v;
  if (total > 0.0) {
    for (double& v : out) v /= total;
  }
  return out;
}

AlgedonicSignal escalate(AlgedonicSignal signal, const Hierarchy& hierarchy,
                         const std::function<std::optional<double>(const std::string&)>& distress_of, double tau) {
  if (!hierarchy.contains(signal.unit)) {
    throw Error(ErrorKind::kOrphanUnit, "signal from unit '" + signal.unit + "' outside the hierarchy");
  }
  signal.route.clear();
  std::string current = signal.unit;
  while (true) {
    const UnitSpec& spec = hierarchy.unit(current);
    if (!spec.parent) break;
    if (!hierarchy.contains(*spec.parent)) {
      throw Error(ErrorKind::kOrphanUnit, "unit '" + current + "' has no reachable parent");
    }
    current = *spec.parent;
    signal.route.push_back(current);
    const std::optional<double> distress = distress_of(current);
    if (!distress || *distress < tau) break;
  }
  signal.escalated_to = current;
  return signal;
}

Monitor::Monitor(std::shared_ptr<const AttributeSchema> schema, Hierarchy hierarchy, MonitorConfig config)
    : schema_(std::move(schema)), hierarchy_(std::move(hierarchy)), config_(config), merged_(schema_) {
  config_.validate();
  for (const UnitSpec& u : hierarchy_.units()) {
    UnitNode node{u, nullptr, {}, PersistenceGate(config_.tau, config_.persistence)};
    if (hierarchy_.is_leaf(u.id)) node.store = std::make_unique<EventIngestor>(schema_);
    nodes_.emplace(u.id, std::move(node));
  }
}

Monitor::UnitNode& Monitor::leaf(const std::string& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorKind::kUnknownUnit, "unknown unit '" + id + "'");
  if (!it->second.store) {
    throw Error(ErrorKind::kSchemaViolation, "unit '" + id + "' aggregates children and takes no events");
  }
  return it->second;
}

void Monitor::train(const EventRecord& rec) {
  std::lock_guard lock(mutex_);
  UnitNode& node = leaf(rec.unit);
  const Observation obs = to_observation(*schema_, rec);
  node.store->ingest(rec.unit, rec.timestamp, obs);
  merged_.ingest(rec.unit, rec.timestamp, obs);
  last_timestamp_ = std::max(last_timestamp_, rec.timestamp);
}

UpdateOutcome Monitor::update(const EventRecord& rec) {
  std::lock_guard lock(mutex_);
  UnitNode& node = leaf(rec.unit);
  const Observation obs = to_observation(*schema_, rec);
  node.store->ingest(rec.unit, rec.timestamp, obs);
  merged_.ingest(rec.unit, rec.timestamp, obs);
  last_timestamp_ = std::max(last_timestamp_, rec.timestamp);

  UpdateOutcome out;
  out.unit = rec.unit;
  out.timestamp = rec.timestamp;

  auto store = node.store->snapshot();
  if (store->labeled_events() == 0) return out;
  std::vector<double> scores;
  try {
    scores = posterior(*store, Evidence::from_observation(obs), config_.smoothing).scores;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kVanishingPosterior) throw;
    return out;
  }
  node.window.push_back(scores);
  while (node.window.size() > config_.window) node.window.pop_front();
  const double distress = scores[schema_->distress_index()];
  out.posterior = std::move(scores);

  if (auto streak = node.gate.push(distress)) {
    AlgedonicSignal signal{rec.unit, rec.timestamp, distress, *streak, rec.unit, {}};
    signal = escalate(
        std::move(signal), hierarchy_,
        [this](const std::string& id) -> std::optional<double> {
          auto p = posterior_locked(id);
          if (!p) return std::nullopt;
          return (*p)[schema_->distress_index()];
        },
        config_.tau);
    signals_.push_back(signal);
    out.signal = std::move(signal);
  }
  if (listener_) listener_(out);
  return out;
}

std::optional<std::vector<double>> Monitor::posterior_locked(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorKind::kUnknownUnit, "unknown unit '" + id + "'");
  const UnitNode& node = it->second;
  if (node.store) {
    if (node.window.empty()) return std::nullopt;
    return node.window.back();
  }
  std::vector<std::vector<double>> children;
  for (const std::string& child : hierarchy_.children(id)) {
    if (auto p = posterior_locked(child)) children.push_back(std::move(*p));
  }
  if (children.empty()) return std::nullopt;
  return aggregate(children, config_.aggregation);
}

std::optional<std::vector<double>> Monitor::unit_posterior(const std::string& id) const {
  std::lock_guard lock(mutex_);
  return posterior_locked(id);
}

DistressStability distress_stability(std::span<const double> window) {
  if (window.empty()) throw Error(ErrorKind::kInvalidQuery, "stability of an empty window");
  DistressStability out;
  for (double d : window) out.mean += d;
  out.mean /= static_cast<double>(window.size());
  double sq = 0.0;
  for (double d : window) sq += (d - out.mean) * (d - out.mean);
  out.stddev = std::sqrt(sq / static_cast<double>(window.size()));
  return out;
}

UnitStatus Monitor::status_locked(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorKind::kUnknownUnit, "unknown unit '" + id + "'");
  const UnitNode& node = it->second;
  UnitStatus s;
  s.id = id;
  s.level = node.spec.level;
  s.posterior = posterior_locked(id);
  for (const auto& entry : node.window) s.window.push_back(entry[schema_->distress_index()]);
  s.streak = node.gate.streak();
  if (!s.window.empty()) s.stability = distress_stability(s.window);
  return s;
}

UnitStatus Monitor::status(const std::string& id) const {
  std::lock_guard lock(mutex_);
  return status_locked(id);
}

std::vector<AlgedonicSignal> Monitor::signals_since(std::int64_t since) const {
  std::lock_guard lock(mutex_);
  std::vector<AlgedonicSignal> out;
  for (const auto& s : signals_) {
    if (s.timestamp >= since) out.push_back(s);
  }
  return out;
}

std::vector<AlgedonicSignal> Monitor::signal_log() const {
  std::lock_guard lock(mutex_);
  return signals_;
}

std::shared_ptr<const CountStore> Monitor::snapshot(const std::optional<std::string>& unit) const {
  if (!unit) return merged_.snapshot();
  std::lock_guard lock(mutex_);
  auto it = nodes_.find(*unit);
  if (it == nodes_.end()) throw Error(ErrorKind::kUnknownUnit, "unknown unit '" + *unit + "'");
  if (!it->second.store) {
    throw Error(ErrorKind::kInvalidQuery, "unit '" + *unit + "' aggregates children and has no store");
  }
  return it->second.store->snapshot();
}

LadderResult Monitor::query(const TargetedQuery& q) const { return answer(*snapshot(q.unit), q.query); }

AdvisoryReport Monitor::report(const std::vector<TargetedQuery>& queries) const {
  AdvisoryReport report;
  {
    std::lock_guard lock(mutex_);
    report.timestamp = last_timestamp_;
    for (const UnitSpec& u : hierarchy_.units()) report.units.push_back(status_locked(u.id));
    // Latest signal of every unit whose streak is still running.
    std::set<std::string> seen;
    for (auto it = signals_.rbegin(); it != signals_.rend(); ++it) {
      if (!seen.insert(it->unit).second) continue;
      if (nodes_.at(it->unit).gate.streak() >= config_.persistence) report.active_signals.push_back(*it);
    }
    std::reverse(report.active_signals.begin(), report.active_signals.end());
  }
  for (const TargetedQuery& q : queries) {
    AnsweredQuery answered{q, std::nullopt, std::nullopt};
    try {
      answered.result = query(q);
    } catch (const Error& e) {
      answered.error = e.what();
    }
    report.queries.push_back(std::move(answered));
  }
  return report;
}

void Monitor::set_listener(Listener listener) {
  std::lock_guard lock(mutex_);
  listener_ = std::move(listener);
}

}  // namespace algedon
