#pragma once

#include <map>
#include <string>
#include <vector>

#include "fusebench/corpus/types.hpp"

namespace fusebench::dataset {

struct CatalogSummary {
  std::string review_set_id;
  corpus::Summary summary;
};

// Alignment as collected, tagged with the pair it belongs to.
struct SourceAlignment {
  std::string review_set_id;
  std::string summary_id;
  corpus::Alignment alignment;
};

struct AlignmentCorpus {
  std::vector<corpus::ReviewSet> review_sets;
  std::vector<CatalogSummary> summaries;
  std::vector<SourceAlignment> alignments;
};

using SplitPlan = std::map<std::string, corpus::Split>;  // review_set_id -> split

struct AssemblyResult {
  std::vector<corpus::FiCInstance> instances;
  std::vector<std::string> warnings;
};

std::string instance_id_for(const std::string& review_set_id, const std::string& summary_id);

// One instance per catalogued (review-set, summary) pair, in catalogue
// order. Throws DanglingReference for alignments naming an unknown pair or
// review, or a review-set missing from the plan; InvalidAlignment for
// alignments that fail structural validation. Pairs without alignments
// still produce an instance, with a warning.
AssemblyResult assemble_instances(const AlignmentCorpus& corpus, const SplitPlan& plan);

// Catalogue + alignments recovered from already-assembled instances.
AlignmentCorpus corpus_from_instances(const std::vector<corpus::FiCInstance>& instances);

}  // namespace fusebench::dataset
