#include "fusebench/dataset/statistics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "fusebench/dataset/errors.hpp"

namespace fusebench::dataset {

namespace {

using corpus::FiCInstance;

// Number of review sentences (of `review`) intersected by any span.
std::size_t sentences_touched(const corpus::Review& review,
                              const std::vector<const corpus::Alignment*>& alignments) {
  std::set<std::size_t> touched;
  for (const auto* a : alignments) {
    for (const auto& span : a->highlight.spans) {
      for (std::size_t s = 0; s < review.sentences.size(); ++s) {
        if (review.sentences[s].overlaps(span)) touched.insert(s);
      }
    }
  }
  return touched.size();
}

StatsRow compute_row(const std::string& label, const std::vector<const FiCInstance*>& instances) {
  StatsRow row;
  row.label = label;
  row.pair_count = instances.size();

  std::set<std::string> seen_sets;
  std::size_t review_count = 0;
  std::size_t review_tokens = 0;
  std::size_t review_sentences = 0;
  std::size_t summary_tokens = 0;
  std::size_t summary_sentences = 0;
  std::size_t multi_review = 0;
  std::size_t multi_sentence = 0;
  double highlighted_sum = 0.0;
  std::size_t highlighted_n = 0;

  for (const FiCInstance* inst : instances) {
    const auto& rs = inst->review_set;
    if (seen_sets.insert(rs.id).second) {
      std::size_t set_tokens = 0;
      for (const auto& review : rs.reviews) {
        ++review_count;
        review_tokens += review.tokens.size();
        review_sentences += review.sentences.size();
        set_tokens += review.tokens.size();
        row.max_review_tokens = std::max(row.max_review_tokens, review.tokens.size());
      }
      row.max_review_set_tokens = std::max(row.max_review_set_tokens, set_tokens);
    }

    summary_tokens += inst->fused_text.tokens.size();
    summary_sentences += inst->fused_text.sentences.size();
    row.max_summary_tokens = std::max(row.max_summary_tokens, inst->fused_text.tokens.size());

    for (std::size_t s = 0; s < inst->fused_text.sentences.size(); ++s) {
      std::map<std::string, std::vector<const corpus::Alignment*>> by_review;
      for (const auto& a : inst->alignments) {
        if (a.summary_sentence_index == s) by_review[a.highlight.review_id].push_back(&a);
      }
      if (by_review.empty()) continue;
      ++row.aligned_summary_sentences;
      if (by_review.size() >= 2) ++multi_review;
      for (const auto& [review_id, aligned] : by_review) {
        const auto* review = rs.find(review_id);
        if (review != nullptr && sentences_touched(*review, aligned) >= 2) {
          ++multi_sentence;
          break;
        }
      }
    }

    for (const auto& review : rs.reviews) {
      if (review.tokens.empty()) continue;
      std::set<std::size_t> covered;
      for (const auto& h : inst->highlights) {
        if (h.review_id != review.id) continue;
        for (const auto& span : h.spans) {
          for (auto idx : corpus::tokens_in(review.tokens, span)) covered.insert(idx);
        }
      }
      highlighted_sum += static_cast<double>(covered.size()) /
                         static_cast<double>(review.tokens.size());
      ++highlighted_n;
    }
  }

  auto ratio = [](double num, std::size_t den) { return den == 0 ? 0.0 : num / static_cast<double>(den); };
  row.unique_review_sets = seen_sets.size();
  row.mean_summaries_per_set = ratio(static_cast<double>(row.pair_count), row.unique_review_sets);
  row.mean_review_tokens = ratio(static_cast<double>(review_tokens), review_count);
  row.mean_review_sentences = ratio(static_cast<double>(review_sentences), review_count);
  row.mean_summary_tokens = ratio(static_cast<double>(summary_tokens), row.pair_count);
  row.mean_summary_sentences = ratio(static_cast<double>(summary_sentences), row.pair_count);
  row.pct_multi_review = 100.0 * ratio(static_cast<double>(multi_review), row.aligned_summary_sentences);
  row.pct_multi_sentence =
      100.0 * ratio(static_cast<double>(multi_sentence), row.aligned_summary_sentences);
  row.mean_highlighted_fraction = ratio(highlighted_sum, highlighted_n);
  return row;
}

}  // namespace

const StatsRow* StatsTable::find(const std::string& label) const {
  for (const auto& r : rows) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

StatsTable compute_statistics(const std::vector<FiCInstance>& instances) {
  if (instances.empty()) {
    throw DatasetError(DatasetErrc::EmptyInput, "no instances to summarize");
  }
  StatsTable table;
  for (auto split : {corpus::Split::Train, corpus::Split::Dev, corpus::Split::Test}) {
    std::vector<const FiCInstance*> subset;
    for (const auto& inst : instances) {
      if (inst.split == split) subset.push_back(&inst);
    }
    if (!subset.empty()) table.rows.push_back(compute_row(corpus::to_string(split), subset));
  }
  std::vector<const FiCInstance*> all;
  for (const auto& inst : instances) all.push_back(&inst);
  table.rows.push_back(compute_row("overall", all));
  return table;
}

nlohmann::json to_json(const StatsTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({
        {"split", r.label},
        {"unique_review_sets", r.unique_review_sets},
        {"mean_summaries_per_set", r.mean_summaries_per_set},
        {"pair_count", r.pair_count},
        {"mean_review_tokens", r.mean_review_tokens},
        {"mean_summary_tokens", r.mean_summary_tokens},
        {"max_review_tokens", r.max_review_tokens},
        {"max_review_set_tokens", r.max_review_set_tokens},
        {"max_summary_tokens", r.max_summary_tokens},
        {"mean_review_sentences", r.mean_review_sentences},
        {"mean_summary_sentences", r.mean_summary_sentences},
        {"aligned_summary_sentences", r.aligned_summary_sentences},
        {"pct_multi_review", r.pct_multi_review},
        {"pct_multi_sentence", r.pct_multi_sentence},
        {"mean_highlighted_fraction", r.mean_highlighted_fraction},
    });
  }
  return {{"rows", rows}};
}

std::string render_text(const StatsTable& table, const std::optional<std::string>& only_label) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-8s %6s %10s %7s %15s %16s %15s %13s %13s\n", "split",
                "#sets", "#summ/set", "#pairs", "tokens rev/sum", "max rev/set/sum",
                "sents rev/sum", "multi-review", "multi-sent");
  out += line;
  for (const auto& r : table.rows) {
    if (only_label && r.label != *only_label) continue;
    char tokens[64], maxes[64], sents[64], multi_r[32], multi_s[32];
    std::snprintf(tokens, sizeof tokens, "%.2f/%.2f", r.mean_review_tokens, r.mean_summary_tokens);
    std::snprintf(maxes, sizeof maxes, "%zu/%zu/%zu", r.max_review_tokens,
                  r.max_review_set_tokens, r.max_summary_tokens);
    std::snprintf(sents, sizeof sents, "%.2f/%.2f", r.mean_review_sentences,
                  r.mean_summary_sentences);
    std::snprintf(multi_r, sizeof multi_r, "%.2f%%", r.pct_multi_review);
    std::snprintf(multi_s, sizeof multi_s, "%.2f%%", r.pct_multi_sentence);
    std::snprintf(line, sizeof line, "%-8s %6zu %10.2f %7zu %15s %16s %15s %13s %13s\n",
                  r.label.c_str(), r.unique_review_sets, r.mean_summaries_per_set,
                  r.pair_count, tokens, maxes, sents, multi_r, multi_s);
    out += line;
  }
  return out;
}

}  // namespace fusebench::dataset
