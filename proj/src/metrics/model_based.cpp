#include "fusebench/metrics/model_based.hpp"

#include <numeric>

#include "fusebench/corpus/text.hpp"
#include "fusebench/metrics/errors.hpp"

namespace fusebench::metrics {

namespace {

using gateway::ScorerKind;
using gateway::ScorerRequest;

std::string to_string_errc(MetricsErrc code) {
  switch (code) {
    case MetricsErrc::EmptyHighlights: return "EmptyHighlights";
    case MetricsErrc::EmptyOutput: return "EmptyOutput";
    case MetricsErrc::InstanceMismatch: return "InstanceMismatch";
    case MetricsErrc::LengthMismatch: return "LengthMismatch";
    case MetricsErrc::InvalidArgument: return "InvalidArgument";
  }
  return "MetricsError";
}

void require_highlights(const std::vector<corpus::Highlight>& highlights, const std::string& who) {
  if (highlights.empty()) {
    throw MetricsError(MetricsErrc::EmptyHighlights, who + ": instance has no highlights");
  }
}

void require_sentences(const corpus::SystemOutput& output, const std::string& who) {
  if (output.sentences.empty()) {
    throw MetricsError(MetricsErrc::EmptyOutput,
                       who + ": output for " + output.instance_id + " has no sentences");
  }
}

UnitScores run(gateway::ScorerGateway& scorer, const std::vector<ScorerRequest>& requests,
               const std::string& metric) {
  const auto results = scorer.score_batch(requests);
  UnitScores out;
  out.per_unit.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (const auto* err = std::get_if<gateway::GatewayError>(&results[i])) {
      throw ScorerCallError(*err, metric, i);
    }
    out.per_unit.push_back(std::get<gateway::ScorerResponse>(results[i]).probability);
  }
  out.overall = out.per_unit.empty()
                    ? 0.0
                    : std::accumulate(out.per_unit.begin(), out.per_unit.end(), 0.0) /
                          static_cast<double>(out.per_unit.size());
  return out;
}

std::string request_id(const std::string& metric, const corpus::SystemOutput& output,
                       std::size_t i) {
  return metric + ":" + output.instance_id + ":" + output.system_id + ":" + std::to_string(i);
}

UnitScores per_sentence(const corpus::SystemOutput& output,
                        const std::vector<corpus::Highlight>& highlights,
                        const corpus::ReviewSet& reviews, gateway::ScorerGateway& scorer,
                        ScorerKind kind, const std::string& metric) {
  require_highlights(highlights, metric);
  require_sentences(output, metric);
  const auto premise = corpus::concatenate_highlights(highlights, reviews);
  std::vector<ScorerRequest> requests;
  for (std::size_t i = 0; i < output.sentences.size(); ++i) {
    requests.push_back(
        {kind, premise, std::string(output.sentence_text(i)), request_id(metric, output, i)});
  }
  return run(scorer, requests, metric);
}

}  // namespace

std::string to_string(MetricsErrc code) { return to_string_errc(code); }

ScorerCallError::ScorerCallError(const gateway::GatewayError& cause, std::string metric,
                                 std::size_t unit_index)
    : Error(cause.code(),
            metric + " unit " + std::to_string(unit_index) + ": " + cause.what()),
      gateway_errc_(cause.errc()),
      metric_(std::move(metric)),
      unit_index_(unit_index) {}

std::string to_string(CoverageMode mode) { return mode == CoverageMode::Trained ? "trained" : "nli"; }

CoverageMode parse_coverage_mode(std::string_view name) {
  const auto lower = corpus::to_lower(name);
  if (lower == "trained") return CoverageMode::Trained;
  if (lower == "nli") return CoverageMode::Nli;
  throw MetricsError(MetricsErrc::InvalidArgument, "unknown coverage mode '" + std::string(name) + "'");
}

UnitScores faithfulness_score(const corpus::SystemOutput& output,
                              const std::vector<corpus::Highlight>& highlights,
                              const corpus::ReviewSet& reviews, gateway::ScorerGateway& scorer) {
  return per_sentence(output, highlights, reviews, scorer, ScorerKind::Entailment, "faithfulness");
}

UnitScores trained_faithfulness_score(const corpus::SystemOutput& output,
                                      const std::vector<corpus::Highlight>& highlights,
                                      const corpus::ReviewSet& reviews,
                                      gateway::ScorerGateway& scorer) {
  return per_sentence(output, highlights, reviews, scorer, ScorerKind::Containment,
                      "trained_faithfulness");
}

UnitScores coverage_score(const corpus::SystemOutput& output,
                          const std::vector<corpus::Highlight>& highlights,
                          const corpus::ReviewSet& reviews, gateway::ScorerGateway& scorer,
                          CoverageMode mode) {
  const std::string metric = "coverage";
  require_highlights(highlights, metric);
  if (output.passage.empty()) {
    throw MetricsError(MetricsErrc::EmptyOutput,
                       metric + ": output for " + output.instance_id + " is empty");
  }
  const auto kind = mode == CoverageMode::Trained ? ScorerKind::Containment : ScorerKind::Entailment;
  std::vector<ScorerRequest> requests;
  for (std::size_t i = 0; i < highlights.size(); ++i) {
    const auto* review = reviews.find(highlights[i].review_id);
    if (review == nullptr) {
      throw MetricsError(MetricsErrc::InstanceMismatch,
                         metric + ": highlight names unknown review '" + highlights[i].review_id + "'");
    }
    requests.push_back({kind, output.passage, corpus::highlight_text(highlights[i], *review),
                        request_id(metric, output, i)});
  }
  return run(scorer, requests, metric);
}

}  // namespace fusebench::metrics
