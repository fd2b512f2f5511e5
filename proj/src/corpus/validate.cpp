#include "fusebench/corpus/validate.hpp"

#include <set>

namespace fusebench::corpus {

namespace {

std::string span_str(const Span& s) {
  return "[" + std::to_string(s.start) + "," + std::to_string(s.end) + ")";
}

void check_span_list(const std::vector<Span>& spans, std::string_view text,
                     const std::string& field, const std::string& bounds_rule,
                     ValidationReport& report) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Span& s = spans[i];
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (s.start >= s.end || s.end > text.size()) {
      report.push_back({f, bounds_rule,
                        span_str(s) + " outside text of length " +
                            std::to_string(text.size())});
      continue;
    }
    if (!is_code_point_boundary(text, s.start) ||
        !is_code_point_boundary(text, s.end)) {
      report.push_back({f, "CodePointBoundary", span_str(s) + " splits a character"});
    }
    if (i > 0 && spans[i - 1].end > s.start) {
      report.push_back({f, "SortedNonOverlapping",
                        span_str(spans[i - 1]) + " then " + span_str(s)});
    }
  }
}

}  // namespace

ValidationReport validate_document(const Document& doc, const std::string& field) {
  ValidationReport report;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& t = doc.tokens[i];
    const std::string f = field + ".tokens[" + std::to_string(i) + "]";
    if (t.span.empty() || t.span.end > doc.text.size() ||
        doc.slice(t.span) != t.text) {
      report.push_back({f, "TokenText", "token text does not match its span"});
    }
    if (i > 0 && doc.tokens[i - 1].span.end > t.span.start) {
      report.push_back({f, "TokenOrder", "tokens overlap or are unsorted"});
    }
  }
  check_span_list(doc.sentences, doc.text, field + ".sentences", "SentenceBounds",
                  report);
  return report;
}

ValidationReport validate_alignment(const Alignment& alignment,
                                    const Summary& summary,
                                    const ReviewSet& reviews,
                                    const std::string& field) {
  ValidationReport report;
  if (alignment.summary_sentence_index >= summary.sentences.size()) {
    report.push_back({field + ".summary_sentence_index", "SentenceIndex",
                      std::to_string(alignment.summary_sentence_index) +
                          " with " + std::to_string(summary.sentences.size()) +
                          " summary sentences"});
  } else {
    const Span& sentence = summary.sentences[alignment.summary_sentence_index];
    check_span_list(alignment.summary_spans, summary.text, field + ".summary_spans",
                    "SummarySpanBounds", report);
    for (std::size_t i = 0; i < alignment.summary_spans.size(); ++i) {
      const Span& s = alignment.summary_spans[i];
      if (s.start < s.end && s.end <= summary.text.size() && !sentence.contains(s)) {
        report.push_back({field + ".summary_spans[" + std::to_string(i) + "]",
                          "WithinSentence",
                          span_str(s) + " not inside sentence " + span_str(sentence)});
      }
    }
  }
  if (alignment.highlight.spans.empty()) {
    report.push_back({field + ".highlight", "NonEmptyHighlight", "no spans"});
  }
  const Review* review = reviews.find(alignment.highlight.review_id);
  if (review == nullptr) {
    report.push_back({field + ".highlight.review_id", "UnknownReview",
                      "'" + alignment.highlight.review_id + "'"});
  } else {
    check_span_list(alignment.highlight.spans, review->text,
                    field + ".highlight.spans", "HighlightBounds", report);
  }
  return report;
}

ValidationReport validate_instance(const FiCInstance& instance) {
  ValidationReport report;
  const ReviewSet& rs = instance.review_set;

  std::set<std::string> ids;
  for (std::size_t i = 0; i < rs.reviews.size(); ++i) {
    const std::string f = "review_set.reviews[" + std::to_string(i) + "]";
    if (!ids.insert(rs.reviews[i].id).second) {
      report.push_back({f + ".id", "UniqueReviewId", "'" + rs.reviews[i].id + "'"});
    }
    auto doc = validate_document(rs.reviews[i], f);
    report.insert(report.end(), doc.begin(), doc.end());
  }

  if (instance.fused_text.text.empty() || instance.fused_text.sentences.empty()) {
    report.push_back({"fused_text", "NonEmptyFusedText", "fused text is empty"});
  }
  auto summary = validate_document(instance.fused_text, "fused_text");
  report.insert(report.end(), summary.begin(), summary.end());

  for (std::size_t i = 0; i < instance.alignments.size(); ++i) {
    auto a = validate_alignment(instance.alignments[i], instance.fused_text, rs,
                                "alignments[" + std::to_string(i) + "]");
    report.insert(report.end(), a.begin(), a.end());
  }

  // When the union property holds, highlight bounds follow from the
  // alignment checks above; only inspect the stored highlights otherwise.
  if (merge_highlights(instance.alignments, rs) != instance.highlights) {
    report.push_back({"highlights", "HighlightUnion",
                      "highlights differ from the merged union of alignment highlights"});
    for (std::size_t i = 0; i < instance.highlights.size(); ++i) {
      const Highlight& h = instance.highlights[i];
      const std::string f = "highlights[" + std::to_string(i) + "]";
      const Review* review = rs.find(h.review_id);
      if (review == nullptr) {
        report.push_back({f + ".review_id", "UnknownReview", "'" + h.review_id + "'"});
        continue;
      }
      if (h.spans.empty()) {
        report.push_back({f + ".spans", "NonEmptyHighlight", "no spans"});
      }
      check_span_list(h.spans, review->text, f + ".spans", "HighlightBounds", report);
    }
  }
  return report;
}

}  // namespace fusebench::corpus
