#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusebench/corpus/types.hpp"

namespace fusebench::dataset {

struct StatsRow {
  std::string label;  // "train", "dev", "test" or "overall"
  std::size_t unique_review_sets = 0;
  double mean_summaries_per_set = 0.0;
  std::size_t pair_count = 0;
  double mean_review_tokens = 0.0;
  double mean_summary_tokens = 0.0;
  std::size_t max_review_tokens = 0;
  std::size_t max_review_set_tokens = 0;
  std::size_t max_summary_tokens = 0;
  double mean_review_sentences = 0.0;
  double mean_summary_sentences = 0.0;
  // Denominator of the two percentages: summary sentences with >= 1 alignment.
  std::size_t aligned_summary_sentences = 0;
  double pct_multi_review = 0.0;    // [0, 100]
  double pct_multi_sentence = 0.0;  // [0, 100]
  double mean_highlighted_fraction = 0.0;  // [0, 1], per (instance, review)
};

struct StatsTable {
  std::vector<StatsRow> rows;  // non-empty splits in train/dev/test order, then overall

  const StatsRow* find(const std::string& label) const;
};

// Review sizes are averaged over the distinct reviews of the distinct
// review-sets in a split; summary sizes over pairs. Throws EmptyInput.
StatsTable compute_statistics(const std::vector<corpus::FiCInstance>& instances);

nlohmann::json to_json(const StatsTable& table);
// Plain-text table with one row per split; pass a label to print one row.
std::string render_text(const StatsTable& table,
                        const std::optional<std::string>& only_label = std::nullopt);

}  // namespace fusebench::dataset
