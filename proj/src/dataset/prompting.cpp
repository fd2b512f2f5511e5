#include "fusebench/dataset/prompting.hpp"

#include "fusebench/dataset/errors.hpp"

namespace fusebench::dataset {

namespace {

std::string header_for(const EncodedInput& target) {
  switch (target.mode) {
    case EncodingMode::WithHighlights:
      return "Write a single coherent passage that fuses together every span marked between " +
             target.marker_open + " and " + target.marker_close +
             " in the reviews below. Cover all marked content, avoid repeating yourself, and "
             "do not add information from unmarked text; unmarked text is there only to help "
             "you interpret the marked spans.";
    case EncodingMode::OnlyHighlights:
      return "Write a single coherent passage that fuses together all of the text fragments "
             "below. Cover every fragment, avoid repeating yourself, and do not add any other "
             "information.";
    case EncodingMode::NoHighlights:
      break;
  }
  return "Write a single coherent passage summarizing the reviews below, without repeating "
         "yourself.";
}

}  // namespace

std::string build_kshot_prompt(std::span<const Exemplar> exemplars, const EncodedInput& target,
                               std::size_t k) {
  if (k > exemplars.size()) {
    throw DatasetError(DatasetErrc::NotEnoughExemplars,
                       "requested " + std::to_string(k) + " exemplars but " +
                           std::to_string(exemplars.size()) + " available");
  }
  std::string prompt = header_for(target);
  for (std::size_t i = 0; i < k; ++i) {
    prompt += "\n\n### Example " + std::to_string(i + 1) + "\nInput:\n";
    prompt += exemplars[i].input.text;
    prompt += "\nOutput:\n";
    prompt += exemplars[i].fused_text;
  }
  prompt += "\n\n### Task\nInput:\n";
  prompt += target.text;
  prompt += "\nOutput:\n";
  return prompt;
}

}  // namespace fusebench::dataset
