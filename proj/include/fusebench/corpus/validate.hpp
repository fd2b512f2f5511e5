#pragma once

#include <string>
#include <vector>

#include "fusebench/corpus/types.hpp"

namespace fusebench::corpus {

struct Violation {
  std::string field;  // e.g. "highlights[2].spans[0]"
  std::string rule;   // e.g. "HighlightBounds"
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

// Structural checks for every FiCInstance invariant. Empty iff valid.
ValidationReport validate_instance(const FiCInstance& instance);

// Checks one alignment against a summary and review set; used both for
// whole instances and for single saves in the annotation service.
ValidationReport validate_alignment(const Alignment& alignment,
                                    const Summary& summary,
                                    const ReviewSet& reviews,
                                    const std::string& field = "alignment");

ValidationReport validate_document(const Document& doc, const std::string& field);

}  // namespace fusebench::corpus
