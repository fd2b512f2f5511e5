#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusebench/corpus/types.hpp"

namespace fusebench::dataset {

enum class CoverageLabel { Yes, No };

struct CoverageSample {
  std::string highlight_text;
  std::string modified_summary;
  CoverageLabel label = CoverageLabel::No;
  std::string instance_id;
  std::size_t highlight_index = 0;
  std::vector<std::size_t> removed_sentences;  // summary sentence indices
};

struct CoverageData {
  std::vector<CoverageSample> samples;
  std::vector<std::string> warnings;
};

// Summary sentence indices the instance highlight at `highlight_index`
// aligns to, ascending.
std::vector<std::size_t> aligned_sentences(const corpus::FiCInstance& instance,
                                           std::size_t highlight_index);

// Per highlight: a "No" sample whose summary drops every sentence the
// highlight aligns to, and a "Yes" sample dropping one seeded-random
// sentence it does not align to (skipped with a warning when none exists).
// Remaining sentences are joined by single spaces. Throws TooFewSentences
// (< 2 summary sentences) or NoAlignments.
CoverageData generate_coverage_training_data(const corpus::FiCInstance& instance,
                                             std::uint64_t seed);

// {"highlight", "summary", "label": "yes"|"no"}
nlohmann::json to_json(const CoverageSample& sample);

}  // namespace fusebench::dataset
