#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fusebench/corpus/types.hpp"

namespace fusebench::dataset {

enum class EncodingMode { WithHighlights, OnlyHighlights, NoHighlights };

std::string to_string(EncodingMode mode);
EncodingMode parse_encoding_mode(std::string_view name);

struct EncodingOptions {
  std::string marker_open = "<extra_token_1>";
  std::string marker_close = "<extra_token_2>";
  // Line placed between consecutive reviews; "{k}" becomes the 1-based
  // index of the review that follows.
  std::string separator = "||| review {k}";
};

struct EncodedInput {
  EncodingMode mode = EncodingMode::NoHighlights;
  std::string text;
  std::string marker_open;
  std::string marker_close;
};

// WithHighlights: reviews in order, joined by "\n<separator>\n", each
// merged highlight span wrapped in the markers. NoHighlights: the same
// layout without markers. OnlyHighlights: highlighted text in document
// order joined by single spaces. Throws MarkerCollision when a review
// already contains a marker string.
EncodedInput render_input(const corpus::FiCInstance& instance, EncodingMode mode,
                          const EncodingOptions& options = {});

struct DecodedMarkup {
  std::string stripped;            // text with markers removed
  std::vector<corpus::Span> spans;  // relative to `stripped`
};

// Inverse of the WithHighlights rendering. Throws UnbalancedMarkers or
// NestedMarkers.
DecodedMarkup decode_markup(std::string_view encoded, const EncodingOptions& options = {});

// Maps spans of a decoded NoHighlights-layout text back onto the reviews,
// one Highlight per review that has spans.
std::vector<corpus::Highlight> locate_review_highlights(const DecodedMarkup& decoded,
                                                        const corpus::ReviewSet& reviews,
                                                        const EncodingOptions& options = {});

// Per-review union of instance highlight spans, in review order.
std::vector<corpus::Highlight> merged_review_highlights(const corpus::FiCInstance& instance);

}  // namespace fusebench::dataset
