#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusebench/corpus/types.hpp"
#include "fusebench/gateway/gateway.hpp"
#include "fusebench/metrics/lexical.hpp"
#include "fusebench/metrics/model_based.hpp"

namespace fusebench::metrics {

enum class FaithfulnessMode { Nli, Trained };

struct EvaluationConfig {
  FaithfulnessMode faithfulness_mode = FaithfulnessMode::Nli;
  CoverageMode coverage_mode = CoverageMode::Trained;
  // Any of "rouge1", "rouge2", "rougeL", "meteor".
  std::vector<std::string> lexical = {"rouge1", "rouge2", "rougeL", "meteor"};
};

// Fractions in [0, 1]; rendering scales to 0-100.
struct ScoreReport {
  std::string instance_id;
  std::string system_id;
  double faithfulness = 0.0;
  double coverage = 0.0;
  double f1 = 0.0;
  std::map<std::string, MetricScore> lexical;
  std::vector<double> per_sentence_faithfulness;
  std::vector<double> per_highlight_coverage;
};

// Scores one output. Lexical metrics use the concatenated highlights as
// reference. Scorer failures surface as ScorerCallError naming the metric.
// Throws InstanceMismatch when the ids differ.
ScoreReport evaluate_output(const corpus::FiCInstance& instance, const corpus::SystemOutput& output,
                            gateway::ScorerGateway& scorer, const EvaluationConfig& config = {});

// Per-system means over instances; f1 is the harmonic mean of the two
// means, as in a results table.
struct SystemSummary {
  std::string system_id;
  std::size_t instances = 0;
  double faithfulness = 0.0;
  double coverage = 0.0;
  double f1 = 0.0;
  std::map<std::string, double> lexical;  // mean value per metric
};

std::vector<SystemSummary> summarize_by_system(const std::vector<ScoreReport>& reports);

nlohmann::json to_json(const MetricScore& score);
nlohmann::json to_json(const ScoreReport& report);
ScoreReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SystemSummary& summary);

// "System  Faithfulness  Coverage  F-1" table on the 0-100 scale.
std::string render_results_table(const std::vector<SystemSummary>& systems);

}  // namespace fusebench::metrics
