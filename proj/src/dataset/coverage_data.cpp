#include "fusebench/dataset/coverage_data.hpp"

#include <algorithm>
#include <set>

#include "fusebench/dataset/errors.hpp"
#include "fusebench/util/rng.hpp"

namespace fusebench::dataset {

namespace {

std::string summary_without(const corpus::Summary& summary,
                            const std::vector<std::size_t>& removed) {
  std::string out;
  for (std::size_t s = 0; s < summary.sentences.size(); ++s) {
    if (std::binary_search(removed.begin(), removed.end(), s)) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(summary.slice(summary.sentences[s]));
  }
  return out;
}

}  // namespace

std::vector<std::size_t> aligned_sentences(const corpus::FiCInstance& instance,
                                           std::size_t highlight_index) {
  std::set<std::size_t> sentences;
  for (const auto& a : instance.alignments) {
    if (corpus::highlight_index_of(instance.highlights, a) == highlight_index) {
      sentences.insert(a.summary_sentence_index);
    }
  }
  return {sentences.begin(), sentences.end()};
}

CoverageData generate_coverage_training_data(const corpus::FiCInstance& instance,
                                             std::uint64_t seed) {
  const auto& summary = instance.fused_text;
  if (summary.sentences.size() < 2) {
    throw DatasetError(DatasetErrc::TooFewSentences,
                       instance.instance_id + ": summary has " +
                           std::to_string(summary.sentences.size()) + " sentence(s)");
  }
  if (instance.alignments.empty()) {
    throw DatasetError(DatasetErrc::NoAlignments, instance.instance_id + ": no alignments");
  }

  SplitMix64 rng(mix64(seed ^ stable_hash(instance.instance_id)));
  CoverageData out;
  for (std::size_t h = 0; h < instance.highlights.size(); ++h) {
    const auto& highlight = instance.highlights[h];
    const auto* review = instance.review_set.find(highlight.review_id);
    if (review == nullptr) continue;
    const std::string text = corpus::highlight_text(highlight, *review);
    const auto aligned = aligned_sentences(instance, h);

    CoverageSample negative;
    negative.highlight_text = text;
    negative.label = CoverageLabel::No;
    negative.instance_id = instance.instance_id;
    negative.highlight_index = h;
    negative.removed_sentences = aligned;
    negative.modified_summary = summary_without(summary, aligned);
    if (negative.modified_summary == summary.text) {
      out.warnings.push_back(instance.instance_id + ": highlight " + std::to_string(h) +
                             " negative equals the original summary; dropped");
    } else {
      out.samples.push_back(std::move(negative));
    }

    std::vector<std::size_t> candidates;
    for (std::size_t s = 0; s < summary.sentences.size(); ++s) {
      if (!std::binary_search(aligned.begin(), aligned.end(), s)) candidates.push_back(s);
    }
    if (candidates.empty()) {
      out.warnings.push_back(instance.instance_id + ": highlight " + std::to_string(h) +
                             " aligns to every sentence; positive skipped");
      continue;
    }
    const std::size_t drop = candidates[rng.below(candidates.size())];
    CoverageSample positive;
    positive.highlight_text = text;
    positive.label = CoverageLabel::Yes;
    positive.instance_id = instance.instance_id;
    positive.highlight_index = h;
    positive.removed_sentences = {drop};
    positive.modified_summary = summary_without(summary, positive.removed_sentences);
    out.samples.push_back(std::move(positive));
  }
  return out;
}

nlohmann::json to_json(const CoverageSample& sample) {
  return {{"highlight", sample.highlight_text},
          {"summary", sample.modified_summary},
          {"label", sample.label == CoverageLabel::Yes ? "yes" : "no"}};
}

}  // namespace fusebench::dataset
