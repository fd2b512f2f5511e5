#include "fusebench/metrics/agreement.hpp"

#include <algorithm>
#include <iterator>

namespace fusebench::metrics {

namespace {

void check_alignments(const std::vector<corpus::Alignment>& alignments,
                      const corpus::FiCInstance& instance, const char* who) {
  for (const auto& a : alignments) {
    if (instance.review_set.find(a.highlight.review_id) == nullptr) {
      throw MetricsError(MetricsErrc::InstanceMismatch,
                         std::string(who) + " alignment names review '" + a.highlight.review_id +
                             "' not in " + instance.instance_id);
    }
    if (a.summary_sentence_index >= instance.fused_text.sentences.size()) {
      throw MetricsError(MetricsErrc::InstanceMismatch,
                         std::string(who) + " alignment targets sentence " +
                             std::to_string(a.summary_sentence_index) + " of a " +
                             std::to_string(instance.fused_text.sentences.size()) +
                             "-sentence summary");
    }
  }
}

}  // namespace

TokenKeySet aligned_content_tokens(const std::vector<corpus::Alignment>& alignments,
                                   const corpus::FiCInstance& instance, std::size_t sentence) {
  TokenKeySet keys;
  for (const auto& a : alignments) {
    if (a.summary_sentence_index != sentence) continue;
    const auto* review = instance.review_set.find(a.highlight.review_id);
    if (review == nullptr) continue;
    for (const auto& span : a.highlight.spans) {
      for (auto idx : corpus::tokens_in(review->tokens, span)) {
        if (review->tokens[idx].is_content_word) keys.emplace(review->id, idx);
      }
    }
  }
  return keys;
}

IouResult iou_agreement(const std::vector<corpus::Alignment>& a,
                        const std::vector<corpus::Alignment>& b,
                        const corpus::FiCInstance& instance, IouAggregation aggregation) {
  check_alignments(a, instance, "first");
  check_alignments(b, instance, "second");

  IouResult result;
  double sum = 0.0;
  std::size_t counted = 0;
  std::size_t pooled_inter = 0;
  std::size_t pooled_union = 0;
  for (std::size_t s = 0; s < instance.fused_text.sentences.size(); ++s) {
    const auto ka = aligned_content_tokens(a, instance, s);
    const auto kb = aligned_content_tokens(b, instance, s);
    TokenKeySet inter;
    std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(),
                          std::inserter(inter, inter.end()));
    const std::size_t uni = ka.size() + kb.size() - inter.size();
    const double iou = uni == 0 ? 1.0 : static_cast<double>(inter.size()) / static_cast<double>(uni);
    result.per_sentence.push_back(100.0 * iou);

    bool aligned = false;
    for (const auto* side : {&a, &b}) {
      aligned = aligned || std::any_of(side->begin(), side->end(), [s](const auto& x) {
                  return x.summary_sentence_index == s;
                });
    }
    result.scored.push_back(aligned);
    if (aligned) {
      sum += iou;
      ++counted;
      pooled_inter += inter.size();
      pooled_union += uni;
    }
  }

  if (counted == 0) {
    result.overall = 100.0;
  } else if (aggregation == IouAggregation::SentenceMean) {
    result.overall = 100.0 * sum / static_cast<double>(counted);
  } else {
    result.overall = pooled_union == 0 ? 100.0
                                       : 100.0 * static_cast<double>(pooled_inter) /
                                             static_cast<double>(pooled_union);
  }
  return result;
}

}  // namespace fusebench::metrics
