#include "fusebench/corpus/types.hpp"

#include <algorithm>
#include <numeric>

#include "fusebench/corpus/errors.hpp"

namespace fusebench::corpus {

std::string to_string(CorpusErrc code) {
  switch (code) {
    case CorpusErrc::InvalidUtf8: return "InvalidUtf8";
    case CorpusErrc::MalformedDocument: return "MalformedDocument";
    case CorpusErrc::DuplicateId: return "DuplicateId";
  }
  return "CorpusError";
}

Document Document::from_text(std::string id, std::string_view text) {
  Document doc;
  doc.id = std::move(id);
  doc.text = normalize_nfc(text);
  doc.tokens = tokenize(doc.text);
  doc.sentences = split_sentences(doc.text);
  return doc;
}

std::string to_string(Origin origin) {
  switch (origin) {
    case Origin::CocoTrip: return "CocoTrip";
    case Origin::FewSum: return "FewSum";
    case Origin::Other: return "Other";
  }
  return "Other";
}

std::string to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

Origin parse_origin(std::string_view name) {
  const auto lower = to_lower(name);
  if (lower == "cocotrip") return Origin::CocoTrip;
  if (lower == "fewsum") return Origin::FewSum;
  return Origin::Other;
}

Split parse_split(std::string_view name) {
  const auto lower = to_lower(name);
  if (lower == "train") return Split::Train;
  if (lower == "dev" || lower == "validation") return Split::Dev;
  if (lower == "test") return Split::Test;
  throw CorpusError(CorpusErrc::MalformedDocument,
                    "unknown split '" + std::string(name) + "'");
}

std::optional<std::size_t> ReviewSet::index_of(std::string_view review_id) const {
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    if (reviews[i].id == review_id) return i;
  }
  return std::nullopt;
}

const Review* ReviewSet::find(std::string_view review_id) const {
  const auto idx = index_of(review_id);
  return idx ? &reviews[*idx] : nullptr;
}

bool Alignment::same_spans(const Alignment& other) const {
  return summary_sentence_index == other.summary_sentence_index &&
         summary_spans == other.summary_spans && highlight == other.highlight;
}

SystemOutput SystemOutput::from_passage(std::string instance_id,
                                        std::string system_id,
                                        std::string_view passage) {
  SystemOutput out;
  out.instance_id = std::move(instance_id);
  out.system_id = std::move(system_id);
  out.passage = normalize_nfc(passage);
  out.sentences = split_sentences(out.passage);
  return out;
}

std::string_view SystemOutput::sentence_text(std::size_t index) const {
  const Span& s = sentences.at(index);
  return std::string_view(passage).substr(s.start, s.length());
}

std::vector<Span> merge_spans(std::vector<Span> spans) {
  std::erase_if(spans, [](const Span& s) { return s.empty(); });
  std::sort(spans.begin(), spans.end());
  std::vector<Span> merged;
  for (const Span& s : spans) {
    if (!merged.empty() && s.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

namespace {

bool any_overlap(const std::vector<Span>& a, const std::vector<Span>& b) {
  for (const Span& x : a) {
    for (const Span& y : b) {
      if (x.overlaps(y)) return true;
    }
  }
  return false;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

std::vector<Highlight> merge_highlights(const std::vector<Alignment>& alignments,
                                        const ReviewSet& reviews) {
  std::vector<Highlight> result;
  for (const Review& review : reviews.reviews) {
    std::vector<const Highlight*> members;
    for (const Alignment& a : alignments) {
      if (a.highlight.review_id == review.id && !a.highlight.spans.empty()) {
        members.push_back(&a.highlight);
      }
    }
    std::vector<std::size_t> parent(members.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (any_overlap(members[i]->spans, members[j]->spans)) {
          parent[find_root(parent, i)] = find_root(parent, j);
        }
      }
    }
    std::vector<Highlight> groups;
    std::vector<std::size_t> group_of_root(members.size(), members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::size_t root = find_root(parent, i);
      if (group_of_root[root] == members.size()) {
        group_of_root[root] = groups.size();
        groups.push_back(Highlight{review.id, {}});
      }
      auto& spans = groups[group_of_root[root]].spans;
      spans.insert(spans.end(), members[i]->spans.begin(), members[i]->spans.end());
    }
    for (auto& g : groups) g.spans = merge_spans(std::move(g.spans));
    std::sort(groups.begin(), groups.end(),
              [](const Highlight& a, const Highlight& b) { return a.spans < b.spans; });
    for (auto& g : groups) result.push_back(std::move(g));
  }
  return result;
}

std::optional<std::size_t> highlight_index_of(
    const std::vector<Highlight>& highlights, const Alignment& alignment) {
  for (std::size_t i = 0; i < highlights.size(); ++i) {
    if (highlights[i].review_id == alignment.highlight.review_id &&
        any_overlap(highlights[i].spans, alignment.highlight.spans)) {
      return i;
    }
  }
  return std::nullopt;
}

std::string highlight_text(const Highlight& highlight, const Review& review) {
  std::string out;
  for (const Span& s : highlight.spans) {
    if (!out.empty()) out.push_back(' ');
    out.append(review.slice(s));
  }
  return out;
}

std::string concatenate_highlights(const std::vector<Highlight>& highlights,
                                   const ReviewSet& reviews) {
  std::string out;
  for (const Review& review : reviews.reviews) {
    std::vector<Span> spans;
    for (const Highlight& h : highlights) {
      if (h.review_id == review.id) {
        spans.insert(spans.end(), h.spans.begin(), h.spans.end());
      }
    }
    for (const Span& s : merge_spans(std::move(spans))) {
      if (!out.empty()) out.push_back(' ');
      out.append(review.slice(s));
    }
  }
  return out;
}

}  // namespace fusebench::corpus
