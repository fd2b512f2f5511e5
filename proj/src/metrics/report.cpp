#include "fusebench/metrics/report.hpp"

#include <cstdio>

#include "fusebench/metrics/errors.hpp"

namespace fusebench::metrics {

ScoreReport evaluate_output(const corpus::FiCInstance& instance, const corpus::SystemOutput& output,
                            gateway::ScorerGateway& scorer, const EvaluationConfig& config) {
  if (instance.instance_id != output.instance_id) {
    throw MetricsError(MetricsErrc::InstanceMismatch, "output for '" + output.instance_id +
                                                          "' scored against instance '" +
                                                          instance.instance_id + "'");
  }
  ScoreReport report;
  report.instance_id = instance.instance_id;
  report.system_id = output.system_id;

  const auto faith =
      config.faithfulness_mode == FaithfulnessMode::Nli
          ? faithfulness_score(output, instance.highlights, instance.review_set, scorer)
          : trained_faithfulness_score(output, instance.highlights, instance.review_set, scorer);
  const auto cov =
      coverage_score(output, instance.highlights, instance.review_set, scorer, config.coverage_mode);
  report.faithfulness = faith.overall;
  report.per_sentence_faithfulness = faith.per_unit;
  report.coverage = cov.overall;
  report.per_highlight_coverage = cov.per_unit;
  report.f1 = harmonic_mean(report.faithfulness, report.coverage);

  const auto reference =
      lexical_tokens(corpus::concatenate_highlights(instance.highlights, instance.review_set));
  const auto candidate = lexical_tokens(output.passage);
  for (const auto& name : config.lexical) {
    if (name == "rouge1") {
      report.lexical[name] = rouge_n(reference, candidate, 1);
    } else if (name == "rouge2") {
      report.lexical[name] = rouge_n(reference, candidate, 2);
    } else if (name == "rougeL") {
      report.lexical[name] = rouge_l(reference, candidate);
    } else if (name == "meteor") {
      report.lexical[name] = meteor_lite(reference, candidate);
    } else {
      throw MetricsError(MetricsErrc::InvalidArgument, "unknown lexical metric '" + name + "'");
    }
  }
  return report;
}

std::vector<SystemSummary> summarize_by_system(const std::vector<ScoreReport>& reports) {
  std::map<std::string, SystemSummary> by_system;
  for (const auto& r : reports) {
    auto& s = by_system[r.system_id];
    s.system_id = r.system_id;
    ++s.instances;
    s.faithfulness += r.faithfulness;
    s.coverage += r.coverage;
    for (const auto& [name, score] : r.lexical) s.lexical[name] += score.value;
  }
  std::vector<SystemSummary> out;
  for (auto& [id, s] : by_system) {
    const double n = static_cast<double>(s.instances);
    s.faithfulness /= n;
    s.coverage /= n;
    for (auto& [name, v] : s.lexical) v /= n;
    s.f1 = harmonic_mean(s.faithfulness, s.coverage);
    out.push_back(std::move(s));
  }
  return out;
}

nlohmann::json to_json(const MetricScore& score) {
  nlohmann::json j{{"name", score.name}, {"value", score.value}};
  if (score.recall) j["recall"] = *score.recall;
  if (score.precision) j["precision"] = *score.precision;
  if (score.f1) j["f1"] = *score.f1;
  return j;
}

nlohmann::json to_json(const ScoreReport& report) {
  nlohmann::json lexical = nlohmann::json::object();
  for (const auto& [name, score] : report.lexical) lexical[name] = to_json(score);
  return {
      {"instance_id", report.instance_id},
      {"system_id", report.system_id},
      {"faithfulness", report.faithfulness},
      {"coverage", report.coverage},
      {"f1", report.f1},
      {"lexical", lexical},
      {"per_sentence_faithfulness", report.per_sentence_faithfulness},
      {"per_highlight_coverage", report.per_highlight_coverage},
  };
}

ScoreReport report_from_json(const nlohmann::json& j) {
  ScoreReport r;
  r.instance_id = j.at("instance_id").get<std::string>();
  r.system_id = j.at("system_id").get<std::string>();
  r.faithfulness = j.at("faithfulness").get<double>();
  r.coverage = j.at("coverage").get<double>();
  r.f1 = j.at("f1").get<double>();
  r.per_sentence_faithfulness = j.value("per_sentence_faithfulness", std::vector<double>{});
  r.per_highlight_coverage = j.value("per_highlight_coverage", std::vector<double>{});
  if (j.contains("lexical")) {
    for (const auto& [name, v] : j.at("lexical").items()) {
      MetricScore s;
      s.name = v.value("name", name);
      s.value = v.at("value").get<double>();
      if (v.contains("recall")) s.recall = v.at("recall").get<double>();
      if (v.contains("precision")) s.precision = v.at("precision").get<double>();
      if (v.contains("f1")) s.f1 = v.at("f1").get<double>();
      r.lexical[name] = s;
    }
  }
  return r;
}

nlohmann::json to_json(const SystemSummary& summary) {
  return {
      {"system_id", summary.system_id},
      {"instances", summary.instances},
      {"faithfulness", summary.faithfulness},
      {"coverage", summary.coverage},
      {"f1", summary.f1},
      {"lexical", summary.lexical},
  };
}

std::string render_results_table(const std::vector<SystemSummary>& systems) {
  std::size_t width = 6;
  for (const auto& s : systems) width = std::max(width, s.system_id.size());
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %12s  %8s  %5s\n", static_cast<int>(width), "System",
                "Faithfulness", "Coverage", "F-1");
  out += line;
  for (const auto& s : systems) {
    std::snprintf(line, sizeof line, "%-*s  %12.1f  %8.1f  %5.1f\n", static_cast<int>(width),
                  s.system_id.c_str(), round1(100.0 * s.faithfulness), round1(100.0 * s.coverage),
                  round1(100.0 * s.f1));
    out += line;
  }
  return out;
}

}  // namespace fusebench::metrics
