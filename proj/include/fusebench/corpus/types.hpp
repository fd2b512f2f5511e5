#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusebench/corpus/text.hpp"

namespace fusebench::corpus {

// A segmented text: reviews, summaries and system passages all share this
// shape. Segmentation is a pure function of the (NFC-normalized) text.
struct Document {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  std::vector<Span> sentences;

  // Normalizes `text` to NFC and segments it.
  static Document from_text(std::string id, std::string_view text);

  std::string_view slice(const Span& span) const {
    return std::string_view(text).substr(span.start, span.length());
  }
  std::size_t sentence_count() const noexcept { return sentences.size(); }
};

using Review = Document;
using Summary = Document;

enum class Origin { CocoTrip, FewSum, Other };
enum class Split { Train, Dev, Test };

std::string to_string(Origin origin);
std::string to_string(Split split);
Origin parse_origin(std::string_view name);
Split parse_split(std::string_view name);

struct ReviewSet {
  std::string id;
  std::vector<Review> reviews;
  Origin origin = Origin::Other;

  std::optional<std::size_t> index_of(std::string_view review_id) const;
  const Review* find(std::string_view review_id) const;
};

struct Highlight {
  std::string review_id;
  std::vector<Span> spans;

  friend bool operator==(const Highlight&, const Highlight&) = default;
};

struct Alignment {
  // Assigned by the annotation store; not part of the dataset format.
  std::string id;
  std::size_t summary_sentence_index = 0;
  std::vector<Span> summary_spans;
  Highlight highlight;
  std::optional<std::string> aspect_label;
  std::string annotator_id;

  // Same sentence, summary spans and highlight spans (labels ignored).
  bool same_spans(const Alignment& other) const;
};

struct FiCInstance {
  std::string instance_id;
  ReviewSet review_set;
  std::vector<Highlight> highlights;
  Summary fused_text;
  std::vector<Alignment> alignments;
  Split split = Split::Train;
};

struct SystemOutput {
  std::string instance_id;
  std::string system_id;
  std::string passage;
  std::vector<Span> sentences;

  static SystemOutput from_passage(std::string instance_id,
                                   std::string system_id,
                                   std::string_view passage);
  std::string_view sentence_text(std::size_t index) const;
};

// Sorted union of ranges; overlapping or touching ranges coalesce.
std::vector<Span> merge_spans(std::vector<Span> spans);

// Builds the instance highlight set from alignments: alignment highlights
// on the same review that overlap are fused into one Highlight (spans
// unioned), identical ones collapse. Output is in review order, then by
// first span start. Alignments on reviews absent from `reviews` are ignored.
std::vector<Highlight> merge_highlights(const std::vector<Alignment>& alignments,
                                        const ReviewSet& reviews);

// Index into `highlights` of the merged highlight that absorbed `alignment`.
std::optional<std::size_t> highlight_index_of(
    const std::vector<Highlight>& highlights, const Alignment& alignment);

// Span texts joined by single spaces, spans in order.
std::string highlight_text(const Highlight& highlight, const Review& review);

// Highlighted text in document order: per review, the union of all
// highlight spans (touching spans coalesce), texts joined by single spaces.
std::string concatenate_highlights(const std::vector<Highlight>& highlights,
                                   const ReviewSet& reviews);

}  // namespace fusebench::corpus
