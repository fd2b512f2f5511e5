#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fusebench/corpus/types.hpp"
#include "fusebench/metrics/errors.hpp"

namespace fusebench::metrics {

enum class IouAggregation {
  SentenceMean,  // uniform mean of per-sentence IoU
  Pooled,        // total intersection over total union
};

struct IouResult {
  double overall = 0.0;               // 0-100
  std::vector<double> per_sentence;   // 0-100, one per summary sentence
  std::vector<bool> scored;           // sentence counted in `overall`
};

// (review id, content-word token index) pairs covered by the review spans
// of `alignments` that target `sentence`.
using TokenKeySet = std::set<std::pair<std::string, std::size_t>>;
TokenKeySet aligned_content_tokens(const std::vector<corpus::Alignment>& alignments,
                                   const corpus::FiCInstance& instance, std::size_t sentence);

// Per summary sentence, IoU of the two annotators' content-token sets
// (100 when both are empty). Sentences neither annotator aligned are not
// counted in `overall`; with none counted, overall is 100. Throws
// InstanceMismatch when an alignment names a review or sentence the
// instance does not have.
IouResult iou_agreement(const std::vector<corpus::Alignment>& a,
                        const std::vector<corpus::Alignment>& b,
                        const corpus::FiCInstance& instance,
                        IouAggregation aggregation = IouAggregation::SentenceMean);

// kappa = (p_o - p_e) / (1 - p_e) with empirical marginals; 1 when
// p_e == 1. Throws LengthMismatch for unequal or empty inputs.
template <typename T>
double cohens_kappa(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size() || a.empty()) {
    throw MetricsError(MetricsErrc::LengthMismatch,
                       "rating lists must be non-empty and equally long (" +
                           std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  const double n = static_cast<double>(a.size());
  std::map<T, std::pair<double, double>> marginals;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) agree += 1.0;
    marginals[a[i]].first += 1.0;
    marginals[b[i]].second += 1.0;
  }
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [category, counts] : marginals) p_e += (counts.first / n) * (counts.second / n);
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

template <typename T>
double cohens_kappa(const std::vector<T>& a, const std::vector<T>& b) {
  return cohens_kappa(std::span<const T>(a), std::span<const T>(b));
}

}  // namespace fusebench::metrics
