#pragma once

#include <vector>

#include "fusebench/corpus/types.hpp"
#include "fusebench/gateway/gateway.hpp"

namespace fusebench::metrics {

struct UnitScores {
  double overall = 0.0;           // mean of per_unit
  std::vector<double> per_unit;   // one entry per sentence or highlight
};

enum class CoverageMode { Trained, Nli };

std::string to_string(CoverageMode mode);
CoverageMode parse_coverage_mode(std::string_view name);

// Entailment of each output sentence (hypothesis) by the concatenated
// highlights (premise). Throws EmptyHighlights, EmptyOutput or
// ScorerCallError carrying the failing sentence index.
UnitScores faithfulness_score(const corpus::SystemOutput& output,
                              const std::vector<corpus::Highlight>& highlights,
                              const corpus::ReviewSet& reviews, gateway::ScorerGateway& scorer);

// Trained: containment of each highlight (query) in the passage (context).
// Nli: entailment of each highlight (hypothesis) by the passage (premise).
UnitScores coverage_score(const corpus::SystemOutput& output,
                          const std::vector<corpus::Highlight>& highlights,
                          const corpus::ReviewSet& reviews, gateway::ScorerGateway& scorer,
                          CoverageMode mode);

// Containment of each output sentence (query) in the concatenated
// highlights (context).
UnitScores trained_faithfulness_score(const corpus::SystemOutput& output,
                                      const std::vector<corpus::Highlight>& highlights,
                                      const corpus::ReviewSet& reviews,
                                      gateway::ScorerGateway& scorer);

}  // namespace fusebench::metrics
