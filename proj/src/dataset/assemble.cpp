#include "fusebench/dataset/assemble.hpp"

#include <set>

#include "fusebench/corpus/validate.hpp"
#include "fusebench/dataset/errors.hpp"

namespace fusebench::dataset {

std::string to_string(DatasetErrc code) {
  switch (code) {
    case DatasetErrc::DanglingReference: return "DanglingReference";
    case DatasetErrc::InvalidAlignment: return "InvalidAlignment";
    case DatasetErrc::EmptyInput: return "EmptyInput";
    case DatasetErrc::InvalidRatios: return "InvalidRatios";
    case DatasetErrc::TooFewSentences: return "TooFewSentences";
    case DatasetErrc::NoAlignments: return "NoAlignments";
    case DatasetErrc::UnbalancedMarkers: return "UnbalancedMarkers";
    case DatasetErrc::NestedMarkers: return "NestedMarkers";
    case DatasetErrc::MarkerCollision: return "MarkerCollision";
    case DatasetErrc::NotEnoughExemplars: return "NotEnoughExemplars";
    case DatasetErrc::UnknownEncodingMode: return "UnknownEncodingMode";
  }
  return "DatasetError";
}

std::string instance_id_for(const std::string& review_set_id, const std::string& summary_id) {
  return review_set_id + "__" + summary_id;
}

AssemblyResult assemble_instances(const AlignmentCorpus& corpus, const SplitPlan& plan) {
  std::map<std::string, const corpus::ReviewSet*> sets;
  for (const auto& rs : corpus.review_sets) sets[rs.id] = &rs;

  using PairKey = std::pair<std::string, std::string>;
  std::map<PairKey, std::size_t> pair_index;
  AssemblyResult result;
  for (const auto& entry : corpus.summaries) {
    const auto set_it = sets.find(entry.review_set_id);
    if (set_it == sets.end()) {
      throw DatasetError(DatasetErrc::DanglingReference,
                         "summary '" + entry.summary.id + "' names unknown review-set '" +
                             entry.review_set_id + "'");
    }
    const auto split_it = plan.find(entry.review_set_id);
    if (split_it == plan.end()) {
      throw DatasetError(DatasetErrc::DanglingReference,
                         "review-set '" + entry.review_set_id + "' missing from split plan");
    }
    corpus::FiCInstance inst;
    inst.instance_id = instance_id_for(entry.review_set_id, entry.summary.id);
    inst.review_set = *set_it->second;
    inst.fused_text = entry.summary;
    inst.split = split_it->second;
    pair_index[{entry.review_set_id, entry.summary.id}] = result.instances.size();
    result.instances.push_back(std::move(inst));
  }

  for (const auto& src : corpus.alignments) {
    const auto it = pair_index.find({src.review_set_id, src.summary_id});
    if (it == pair_index.end()) {
      throw DatasetError(DatasetErrc::DanglingReference,
                         "alignment references unknown pair (" + src.review_set_id + ", " +
                             src.summary_id + ")");
    }
    auto& inst = result.instances[it->second];
    if (inst.review_set.find(src.alignment.highlight.review_id) == nullptr) {
      throw DatasetError(DatasetErrc::DanglingReference,
                         "alignment references unknown review '" +
                             src.alignment.highlight.review_id + "' in " + inst.instance_id);
    }
    const auto report = corpus::validate_alignment(src.alignment, inst.fused_text,
                                                   inst.review_set);
    if (!report.empty()) {
      throw DatasetError(DatasetErrc::InvalidAlignment,
                         inst.instance_id + ": " + report.front().field + " " +
                             report.front().rule + " (" + report.front().detail + ")");
    }
    inst.alignments.push_back(src.alignment);
  }

  for (auto& inst : result.instances) {
    inst.highlights = corpus::merge_highlights(inst.alignments, inst.review_set);
    if (inst.alignments.empty()) {
      result.warnings.push_back(inst.instance_id + ": no alignments; empty highlight set");
    }
  }
  return result;
}

AlignmentCorpus corpus_from_instances(const std::vector<corpus::FiCInstance>& instances) {
  AlignmentCorpus out;
  std::set<std::string> seen_sets;
  for (const auto& inst : instances) {
    if (seen_sets.insert(inst.review_set.id).second) out.review_sets.push_back(inst.review_set);
    out.summaries.push_back({inst.review_set.id, inst.fused_text});
    for (const auto& a : inst.alignments) {
      out.alignments.push_back({inst.review_set.id, inst.fused_text.id, a});
    }
  }
  return out;
}

}  // namespace fusebench::dataset
