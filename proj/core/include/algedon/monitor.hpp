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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algedon/bayes_filter.hpp"
#include "algedon/causal_ladder.hpp"
#include "algedon/ingest.hpp"

namespace algedon {

struct UnitSpec {
  std::string id;
  int level = 1;
  std::optional<std::string> parent;
};

/// Recursion tree of monitored units. Every parent sits exactly one level
/// above its children, so escalation paths are bounded by the tree depth.
class Hierarchy {
 public:
  explicit Hierarchy(std::vector<UnitSpec> units);

  const std::vector<UnitSpec>& units() const { return units_; }
  bool contains(const std::string& id) const { return index_.contains(id); }
  const UnitSpec& unit(const std::string& id) const;
  const std::vector<std::string>& children(const std::string& id) const;
  bool is_leaf(const std::string& id) const { return children(id).empty(); }
  int depth() const { return max_level_; }

 private:
  std::vector<UnitSpec> units_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, std::vector<std::string>> children_;
  int max_level_ = 0;
};

enum class AggregationMode { kMean, kMax };

struct MonitorConfig {
  double tau = 0.8;             // distress threshold
  std::size_t persistence = 3;  // k consecutive hot windows before a signal
  std::size_t window = 10;      // W retained posteriors per unit
  AggregationMode aggregation = AggregationMode::kMean;
  Smoothing smoothing = Smoothing::kClasses;

  void validate() const;
};

struct AlgedonicSignal {
  std::string unit;
  std::int64_t timestamp = 0;
  double severity = 0.0;
  std::size_t streak = 0;
  std::string escalated_to;
  std::vector<std::string> route;  // units the signal was delivered to, in order

  bool operator==(const AlgedonicSignal&) const = default;
};

/// Threshold/persistence rule over a stream of distress posteriors.
class PersistenceGate {
 public:
  PersistenceGate(double tau, std::size_t persistence) : tau_(tau), persistence_(persistence) {}

  /// Returns the current streak when it has reached the persistence bound.
  std::optional<std::size_t> push(double distress);
  std::size_t streak() const { return streak_; }

 private:
  double tau_;
  std::size_t persistence_;
  std::size_t streak_ = 0;
};

/// Parent distribution from child posteriors: per-class mean (or max), renormalized.
std::vector<double> aggregate(std::span<const std::vector<double>> child_posteriors,
                              AggregationMode mode = AggregationMode::kMean);

/// Routes a signal up the tree. It is delivered to the parent and re-emitted
/// while each receiving unit's own distress is at least tau, stopping at a root.
AlgedonicSignal escalate(AlgedonicSignal signal, const Hierarchy& hierarchy,
                         const std::function<std::optional<double>(const std::string&)>& distress_of,
                         double tau);

/// Spread of a unit's recent distress posteriors: a measurable stand-in for
/// how settled the unit is. A small deviation means a steady state.
struct DistressStability {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation over the window
};

struct UnitStatus {
  std::string id;
  int level = 1;
  std::optional<std::vector<double>> posterior;
  std::vector<double> window;  // distress posterior per retained window entry, oldest first
  std::size_t streak = 0;
  std::optional<DistressStability> stability;  // empty when the window is empty
};

DistressStability distress_stability(std::span<const double> window);

struct TargetedQuery {
  std::optional<std::string> unit;  // empty: the store merged over all units
  LadderQuery query;
};

struct AnsweredQuery {
  TargetedQuery query;
  std::optional<LadderResult> result;
  std::optional<std::string> error;
};

/// Advice only. There is deliberately no field that could carry an action.
struct AdvisoryReport {
  static constexpr bool advisory_only = true;

  std::int64_t timestamp = 0;
  std::vector<UnitStatus> units;
  std::vector<AlgedonicSignal> active_signals;
  std::vector<AnsweredQuery> queries;
};

struct UpdateOutcome {
  std::string unit;
  std::int64_t timestamp = 0;
  std::optional<std::vector<double>> posterior;
  std::optional<AlgedonicSignal> signal;
};

class Monitor {
 public:
  using Listener = std::function<void(const UpdateOutcome&)>;

  Monitor(std::shared_ptr<const AttributeSchema> schema, Hierarchy hierarchy, MonitorConfig config);

  const AttributeSchema& schema() const { return *schema_; }
  const std::shared_ptr<const AttributeSchema>& schema_ptr() const { return schema_; }
  const Hierarchy& hierarchy() const { return hierarchy_; }
  const MonitorConfig& config() const { return config_; }

  /// Ingests, classifies the record's evidence, and applies the persistence gate.
  UpdateOutcome update(const EventRecord& rec);

  /// Ingests a record into the unit and merged stores without classifying it.
  void train(const EventRecord& rec);

  std::optional<std::vector<double>> unit_posterior(const std::string& id) const;
  UnitStatus status(const std::string& id) const;
  std::vector<AlgedonicSignal> signals_since(std::int64_t since) const;
  std::vector<AlgedonicSignal> signal_log() const;

  std::shared_ptr<const CountStore> snapshot(const std::optional<std::string>& unit) const;
  LadderResult query(const TargetedQuery& q) const;
  AdvisoryReport report(const std::vector<TargetedQuery>& queries = {}) const;

  void set_listener(Listener listener);

 private:
  struct UnitNode {
    UnitSpec spec;
    std::unique_ptr<EventIngestor> store;
    std::deque<std::vector<double>> window;
    PersistenceGate gate;
  };

  UnitNode& leaf(const std::string& id);
  std::optional<std::vector<double>> posterior_locked(const std::string& id) const;
  UnitStatus status_locked(const std::string& id) const;

  std::shared_ptr<const AttributeSchema> schema_;
  Hierarchy hierarchy_;
  MonitorConfig config_;
  EventIngestor merged_;
  std::map<std::string, UnitNode> nodes_;
  std::vector<AlgedonicSignal> signals_;
  std::int64_t last_timestamp_ = 0;
  Listener listener_;
  mutable std::recursive_mutex mutex_;
};

}  // namespace algedon
