#include "fusebench/metaeval/table.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace fusebench::metaeval {

namespace {

using Key = std::pair<std::string, std::string>;

std::map<Key, double> index_entries(const NamedSeries& series) {
  std::map<Key, double> out;
  for (const auto& e : series.entries) {
    if (!out.emplace(Key{e.instance_id, e.system_id}, e.value).second) {
      throw MetaEvalError(MetaEvalErrc::DuplicateKey, series.name + ": duplicate entry for (" +
                                                          e.instance_id + ", " + e.system_id + ")");
    }
  }
  return out;
}

std::string format_cell(const TableCell& cell) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s%.3f [%.3f, %.3f]", cell.best ? "*" : " ",
                cell.result.bootstrap_mean, cell.result.ci_low, cell.result.ci_high);
  return buf;
}

}  // namespace

std::vector<ScoreEntry> parse_score_entries(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw MetaEvalError(MetaEvalErrc::InvalidArgument, "score series must be a JSON array");
  }
  std::vector<ScoreEntry> out;
  for (const auto& e : j) {
    out.push_back({e.at("instance_id").get<std::string>(), e.value("system_id", std::string{}),
                   e.at("value").get<double>()});
  }
  return out;
}

const TableCell& CorrelationTable::at(const std::string& metric, const std::string& axis) const {
  const auto m = std::find(metrics.begin(), metrics.end(), metric);
  const auto a = std::find(axes.begin(), axes.end(), axis);
  if (m == metrics.end() || a == axes.end()) {
    throw MetaEvalError(MetaEvalErrc::MissingSeries, "no cell for (" + metric + ", " + axis + ")");
  }
  return cells[static_cast<std::size_t>(m - metrics.begin())][static_cast<std::size_t>(a - axes.begin())];
}

CorrelationTable correlation_table(const std::vector<NamedSeries>& metrics,
                                   const std::vector<NamedSeries>& human_axes,
                                   const BootstrapConfig& config) {
  if (metrics.empty() || human_axes.empty()) {
    throw MetaEvalError(MetaEvalErrc::MissingSeries, "need at least one metric and one human axis");
  }
  CorrelationTable table;
  std::vector<std::map<Key, double>> human_index;
  for (const auto& axis : human_axes) {
    table.axes.push_back(axis.name);
    human_index.push_back(index_entries(axis));
  }
  for (const auto& metric : metrics) {
    table.metrics.push_back(metric.name);
    const auto values = index_entries(metric);
    auto& row = table.cells.emplace_back();
    for (std::size_t a = 0; a < human_axes.size(); ++a) {
      PairedSeries series;
      for (const auto& [key, human] : human_index[a]) {
        const auto it = values.find(key);
        if (it == values.end()) {
          throw MetaEvalError(MetaEvalErrc::MissingSeries,
                              metric.name + " has no value for (" + key.first + ", " +
                                  key.second + ") judged on " + human_axes[a].name);
        }
        series.metric_values.push_back(it->second);
        series.human_values.push_back(human);
        series.labels.push_back(key.first);
      }
      row.push_back({bootstrap_correlation(series, config), false});
    }
  }
  for (std::size_t a = 0; a < table.axes.size(); ++a) {
    double best = -2.0;
    for (const auto& row : table.cells) best = std::max(best, row[a].result.bootstrap_mean);
    for (auto& row : table.cells) row[a].best = row[a].result.bootstrap_mean == best;
  }
  return table;
}

nlohmann::json to_json(const CorrelationResult& r) {
  return {
      {"method", to_string(r.method)},
      {"point_estimate", r.point_estimate},
      {"bootstrap_mean", r.bootstrap_mean},
      {"ci_low", r.ci_low},
      {"ci_high", r.ci_high},
      {"n_boot", r.n_boot},
      {"sample_size", r.sample_size},
      {"skipped_resamples", r.skipped_resamples},
  };
}

nlohmann::json to_json(const CorrelationTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t m = 0; m < table.metrics.size(); ++m) {
    nlohmann::json row{{"metric", table.metrics[m]}};
    for (std::size_t a = 0; a < table.axes.size(); ++a) {
      auto cell = to_json(table.cells[m][a].result);
      cell["best"] = table.cells[m][a].best;
      row[table.axes[a]] = cell;
    }
    rows.push_back(row);
  }
  return {{"axes", table.axes}, {"rows", rows}};
}

std::string render_text(const CorrelationTable& table) {
  std::size_t width = 6;
  for (const auto& m : table.metrics) width = std::max(width, m.size());
  constexpr int kCell = 24;
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(width), "Metric");
  out += buf;
  for (const auto& axis : table.axes) {
    std::snprintf(buf, sizeof buf, "  %-*s", kCell, axis.c_str());
    out += buf;
  }
  out += '\n';
  for (std::size_t m = 0; m < table.metrics.size(); ++m) {
    std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(width), table.metrics[m].c_str());
    out += buf;
    for (const auto& cell : table.cells[m]) {
      std::snprintf(buf, sizeof buf, "  %-*s", kCell, format_cell(cell).c_str());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace fusebench::metaeval
