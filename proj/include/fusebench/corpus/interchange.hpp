#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "fusebench/corpus/types.hpp"

namespace fusebench::corpus {

// Dataset interchange format: one JSON object per instance,
//   {instance_id, split, origin, review_set_id?, reviews:[{id,text}],
//    summary:{id,text}, alignments:[{summary_sentence_index,
//    summary_spans:[[s,e]...], review_id, highlight_spans:[[s,e]...],
//    aspect_label?, annotator_id}]}
// Segmentation is recomputed on load. Texts must already be NFC (ingest
// normalizes), since alignment offsets index the stored bytes.

nlohmann::json spans_to_json(const std::vector<Span>& spans);
std::vector<Span> spans_from_json(const nlohmann::json& j);

nlohmann::json alignment_to_json(const Alignment& alignment, bool with_id = false);
Alignment alignment_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const FiCInstance& instance);
FiCInstance instance_from_json(const nlohmann::json& j);

// Derived when the file carries no review_set_id: stable hash of the review
// ids and texts, so identical review-sets map to the same id.
std::string derive_review_set_id(const ReviewSet& reviews);

// `path` may be a directory of *.json files (one instance each, read in
// filename order) or a single .json/.jsonl/.ndjson file.
std::vector<FiCInstance> load_instances(const std::filesystem::path& path);
// Writes `<dir>/<instance_id>.json` per instance.
void save_instances(const std::filesystem::path& dir,
                    const std::vector<FiCInstance>& instances);

// System outputs: newline-delimited {instance_id, passage, system_id?}.
std::vector<SystemOutput> load_system_outputs(const std::filesystem::path& path,
                                              const std::string& default_system_id);

std::vector<nlohmann::json> read_ndjson(const std::filesystem::path& path);

}  // namespace fusebench::corpus
