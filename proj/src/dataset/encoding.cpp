#include "fusebench/dataset/encoding.hpp"

#include "fusebench/corpus/text.hpp"
#include "fusebench/dataset/errors.hpp"

namespace fusebench::dataset {

namespace {

std::string separator_line(const EncodingOptions& options, std::size_t k) {
  std::string line = options.separator;
  const auto pos = line.find("{k}");
  if (pos != std::string::npos) line.replace(pos, 3, std::to_string(k));
  return line;
}

std::vector<corpus::Span> spans_for(const std::vector<corpus::Highlight>& merged,
                                    const std::string& review_id) {
  for (const auto& h : merged) {
    if (h.review_id == review_id) return h.spans;
  }
  return {};
}

}  // namespace

std::string to_string(EncodingMode mode) {
  switch (mode) {
    case EncodingMode::WithHighlights: return "with-highlights";
    case EncodingMode::OnlyHighlights: return "only-highlights";
    case EncodingMode::NoHighlights: return "no-highlights";
  }
  return "no-highlights";
}

EncodingMode parse_encoding_mode(std::string_view name) {
  const auto lower = corpus::to_lower(name);
  if (lower == "with-highlights" || lower == "h") return EncodingMode::WithHighlights;
  if (lower == "only-highlights" || lower == "only-h") return EncodingMode::OnlyHighlights;
  if (lower == "no-highlights" || lower == "no-h") return EncodingMode::NoHighlights;
  throw DatasetError(DatasetErrc::UnknownEncodingMode, "unknown encoding mode '" + std::string(name) + "'");
}

std::vector<corpus::Highlight> merged_review_highlights(const corpus::FiCInstance& instance) {
  std::vector<corpus::Highlight> out;
  for (const auto& review : instance.review_set.reviews) {
    std::vector<corpus::Span> spans;
    for (const auto& h : instance.highlights) {
      if (h.review_id == review.id) spans.insert(spans.end(), h.spans.begin(), h.spans.end());
    }
    spans = corpus::merge_spans(std::move(spans));
    if (!spans.empty()) out.push_back({review.id, std::move(spans)});
  }
  return out;
}

EncodedInput render_input(const corpus::FiCInstance& instance, EncodingMode mode,
                          const EncodingOptions& options) {
  EncodedInput out;
  out.mode = mode;
  out.marker_open = options.marker_open;
  out.marker_close = options.marker_close;

  if (mode == EncodingMode::OnlyHighlights) {
    out.text = corpus::concatenate_highlights(instance.highlights, instance.review_set);
    return out;
  }

  const auto merged = merged_review_highlights(instance);
  const auto& reviews = instance.review_set.reviews;
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    const auto& review = reviews[i];
    if (mode == EncodingMode::WithHighlights &&
        (review.text.find(options.marker_open) != std::string::npos ||
         review.text.find(options.marker_close) != std::string::npos)) {
      throw DatasetError(DatasetErrc::MarkerCollision,
                         "review '" + review.id + "' contains a highlight marker");
    }
    if (i > 0) {
      out.text += '\n';
      out.text += separator_line(options, i + 1);
      out.text += '\n';
    }
    if (mode == EncodingMode::NoHighlights) {
      out.text += review.text;
      continue;
    }
    std::size_t cursor = 0;
    for (const auto& span : spans_for(merged, review.id)) {
      out.text.append(review.text, cursor, span.start - cursor);
      out.text += options.marker_open;
      out.text.append(review.text, span.start, span.length());
      out.text += options.marker_close;
      cursor = span.end;
    }
    out.text.append(review.text, cursor);
  }
  return out;
}

DecodedMarkup decode_markup(std::string_view encoded, const EncodingOptions& options) {
  DecodedMarkup out;
  out.stripped.reserve(encoded.size());
  bool open = false;
  std::size_t span_start = 0;
  std::size_t i = 0;
  while (i < encoded.size()) {
    if (encoded.substr(i, options.marker_open.size()) == options.marker_open) {
      if (open) {
        throw DatasetError(DatasetErrc::NestedMarkers,
                           "open marker at byte " + std::to_string(i) + " inside a highlight");
      }
      open = true;
      span_start = out.stripped.size();
      i += options.marker_open.size();
    } else if (encoded.substr(i, options.marker_close.size()) == options.marker_close) {
      if (!open) {
        throw DatasetError(DatasetErrc::UnbalancedMarkers,
                           "close marker at byte " + std::to_string(i) + " without an open");
      }
      open = false;
      if (out.stripped.size() > span_start) out.spans.push_back({span_start, out.stripped.size()});
      i += options.marker_close.size();
    } else {
      out.stripped.push_back(encoded[i++]);
    }
  }
  if (open) throw DatasetError(DatasetErrc::UnbalancedMarkers, "unclosed highlight marker");
  return out;
}

std::vector<corpus::Highlight> locate_review_highlights(const DecodedMarkup& decoded,
                                                        const corpus::ReviewSet& reviews,
                                                        const EncodingOptions& options) {
  std::vector<corpus::Highlight> out;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < reviews.reviews.size(); ++i) {
    if (i > 0) offset += separator_line(options, i + 1).size() + 2;
    const auto& review = reviews.reviews[i];
    const corpus::Span extent{offset, offset + review.text.size()};
    corpus::Highlight h{review.id, {}};
    for (const auto& s : decoded.spans) {
      if (extent.contains(s)) h.spans.push_back({s.start - offset, s.end - offset});
    }
    if (!h.spans.empty()) out.push_back(std::move(h));
    offset = extent.end;
  }
  return out;
}

}  // namespace fusebench::dataset
