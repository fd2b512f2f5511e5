#pragma once

#include <atomic>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fusebench/corpus/types.hpp"
#include "fusebench/util/rng.hpp"

#include <unistd.h>

namespace fusebench::testing {

using corpus::Alignment;
using corpus::FiCInstance;
using corpus::Span;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("fusebench_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline corpus::ReviewSet make_review_set(const std::string& id,
                                         const std::vector<std::string>& texts) {
  corpus::ReviewSet rs;
  rs.id = id;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    rs.reviews.push_back(corpus::Document::from_text("r" + std::to_string(i), texts[i]));
  }
  return rs;
}

inline Alignment make_alignment(std::size_t sentence, std::vector<Span> summary_spans,
                                std::string review_id, std::vector<Span> spans,
                                std::string annotator = "w1") {
  Alignment a;
  a.summary_sentence_index = sentence;
  a.summary_spans = std::move(summary_spans);
  a.highlight = {std::move(review_id), std::move(spans)};
  a.annotator_id = std::move(annotator);
  return a;
}

// Alignment whose summary span is the whole indexed sentence.
inline Alignment align_sentence(const corpus::Summary& summary, std::size_t sentence,
                                std::string review_id, std::vector<Span> spans,
                                std::string annotator = "w1") {
  return make_alignment(sentence, {summary.sentences.at(sentence)}, std::move(review_id),
                        std::move(spans), std::move(annotator));
}

inline FiCInstance make_instance(std::string instance_id, corpus::ReviewSet rs,
                                 const std::string& summary_text,
                                 std::vector<Alignment> alignments,
                                 corpus::Split split = corpus::Split::Test) {
  FiCInstance inst;
  inst.instance_id = std::move(instance_id);
  inst.review_set = std::move(rs);
  inst.fused_text = corpus::Document::from_text(inst.instance_id + "-sum", summary_text);
  inst.alignments = std::move(alignments);
  inst.highlights = corpus::merge_highlights(inst.alignments, inst.review_set);
  inst.split = split;
  return inst;
}

// Two review-sets (A train, B test), two summaries each; every quantity
// below is counted by hand.
inline std::vector<corpus::FiCInstance> stats_fixture() {
  auto a = make_review_set("A", {"Great pool. Clean rooms.", "Staff was rude."});
  auto b = make_review_set("B", {"Bad food. Slow service. Cold tea."});

  const auto a1 = corpus::Document::from_text("x", "Pool and rooms were great. Staff was rude.");
  const auto a2 = corpus::Document::from_text("x", "Nice pool.");
  const auto b1 = corpus::Document::from_text("x", "Food was bad and slow.");
  const auto b2 = corpus::Document::from_text("x", "Tea was cold. Fine.");

  return {
      make_instance("A1", a, a1.text,
                    {align_sentence(a1, 0, "r0", {{6, 10}, {18, 23}}),
                     align_sentence(a1, 1, "r1", {{10, 14}})},
                    corpus::Split::Train),
      make_instance("A2", a, a2.text,
                    {align_sentence(a2, 0, "r0", {{6, 10}}), align_sentence(a2, 0, "r1", {{0, 5}})},
                    corpus::Split::Train),
      make_instance("B1", b, b1.text, {align_sentence(b1, 0, "r0", {{0, 8}, {10, 14}})},
                    corpus::Split::Test),
      make_instance("B2", b, b2.text, {align_sentence(b2, 0, "r0", {{24, 32}})}, corpus::Split::Test),
  };
}

// Random word-ish text built from a small vocabulary, with sentence
// punctuation, so tokenizer/sentence splitter edge cases are exercised.
inline std::string random_text(SplitMix64& rng, std::size_t words) {
  static const std::vector<std::string> vocab = {
      "great", "pool", "Rooms", "were", "clean", "staff", "friendly", "the",
      "breakfast", "noisy", "location", "don't", "café", "2", "nights", "view",
      "and", "but", "very", "helpful", "bed", "comfy", "price", "okay"};
  std::string out;
  bool sentence_start = true;
  for (std::size_t i = 0; i < words; ++i) {
    if (!out.empty()) out.push_back(' ');
    std::string w = vocab[rng.below(vocab.size())];
    if (sentence_start && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 32);
    out += w;
    sentence_start = false;
    const auto r = rng.below(10);
    if (r == 0) {
      out += ".";
      sentence_start = true;
    } else if (r == 1) {
      out += ",";
    } else if (r == 2 && i + 1 < words) {
      out += "!";
      sentence_start = true;
    }
  }
  if (!out.empty() && out.back() != '.' && out.back() != '!') out += ".";
  return out;
}

// Random sorted, non-overlapping token-aligned spans within a document.
inline std::vector<Span> random_token_spans(SplitMix64& rng, const corpus::Document& doc,
                                            std::size_t max_spans) {
  std::vector<Span> spans;
  if (doc.tokens.empty()) return spans;
  const std::size_t n = 1 + rng.below(max_spans);
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < n && cursor < doc.tokens.size(); ++k) {
    const std::size_t first = cursor + rng.below(std::min<std::size_t>(4, doc.tokens.size() - cursor));
    const std::size_t last = std::min(doc.tokens.size() - 1, first + rng.below(4));
    spans.push_back({doc.tokens[first].span.start, doc.tokens[last].span.end});
    cursor = last + 2;
  }
  return spans;
}

// Random instance: 1-4 reviews, a summary of >= 2 sentences, and 1-6
// alignments from random summary sentences to random token spans.
inline FiCInstance random_instance(SplitMix64& rng, const std::string& id) {
  std::vector<std::string> texts;
  const std::size_t n_reviews = 1 + rng.below(4);
  for (std::size_t i = 0; i < n_reviews; ++i) texts.push_back(random_text(rng, 6 + rng.below(30)));
  auto rs = make_review_set(id + "-rs", texts);
  std::string summary_text;
  corpus::Summary probe;
  do {
    summary_text = random_text(rng, 6 + rng.below(20)) + " " + random_text(rng, 4 + rng.below(10));
    probe = corpus::Document::from_text(id + "-sum", summary_text);
  } while (probe.sentences.size() < 2);
  std::vector<Alignment> alignments;
  const std::size_t n_align = 1 + rng.below(6);
  for (std::size_t a = 0; a < n_align; ++a) {
    const auto& review = rs.reviews[rng.below(rs.reviews.size())];
    auto spans = random_token_spans(rng, review, 3);
    if (spans.empty()) continue;
    alignments.push_back(align_sentence(probe, rng.below(probe.sentences.size()), review.id,
                                        std::move(spans), "w" + std::to_string(rng.below(3))));
  }
  return make_instance(id, std::move(rs), summary_text, std::move(alignments));
}

}  // namespace fusebench::testing
