#pragma once

#include <span>
#include <string>

#include "fusebench/dataset/encoding.hpp"

namespace fusebench::dataset {

struct Exemplar {
  EncodedInput input;
  std::string fused_text;
};

// Instruction header, then the first k exemplars (input followed by its
// reference fusion), then the target input with an empty answer slot.
// The header wording depends on the target's encoding mode. Throws
// NotEnoughExemplars when k > exemplars.size().
std::string build_kshot_prompt(std::span<const Exemplar> exemplars, const EncodedInput& target,
                               std::size_t k);

}  // namespace fusebench::dataset
