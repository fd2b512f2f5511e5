#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fusebench/metaeval/bootstrap.hpp"

namespace fusebench::metaeval {

struct ScoreEntry {
  std::string instance_id;
  std::string system_id;
  double value = 0.0;
};

struct NamedSeries {
  std::string name;
  std::vector<ScoreEntry> entries;
};

// Accepts [{instance_id, system_id, value}, ...].
std::vector<ScoreEntry> parse_score_entries(const nlohmann::json& j);

struct TableCell {
  CorrelationResult result;
  bool best = false;
};

struct CorrelationTable {
  std::vector<std::string> metrics;
  std::vector<std::string> axes;
  std::vector<std::vector<TableCell>> cells;  // [metric][axis]

  const TableCell& at(const std::string& metric, const std::string& axis) const;
};

// Joins each metric with each human axis on (instance_id, system_id),
// ordered by key, and bootstraps the correlation. Every human key must
// have a metric value (MissingSeries); metric-only keys are ignored.
// The highest bootstrap mean per axis is marked best (ties all marked).
CorrelationTable correlation_table(const std::vector<NamedSeries>& metrics,
                                   const std::vector<NamedSeries>& human_axes,
                                   const BootstrapConfig& config = {});

nlohmann::json to_json(const CorrelationResult& result);
nlohmann::json to_json(const CorrelationTable& table);
// One row per metric, "tau [low, high]" per axis, best marked with '*'.
std::string render_text(const CorrelationTable& table);

}  // namespace fusebench::metaeval
