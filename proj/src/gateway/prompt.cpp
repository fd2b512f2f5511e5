#include "fusebench/gateway/prompt.hpp"

namespace fusebench::gateway {

std::string render_nli_prompt(std::string_view premise, std::string_view hypothesis) {
  std::string out;
  out.reserve(premise.size() + hypothesis.size() + 256);
  out += "### Instruction: Read the following and determine if the hypothesis can be "
         "inferred from the premise.\n";
  out += "Options: Entailment, Contradiction, or Neutral\n";
  out += "\n";
  out += "### Input:\n";
  out += "Premise:  ";
  out += premise;
  out += "\n";
  out += "Hypothesis: ";
  out += hypothesis;
  out += "\n";
  out += "\n";
  out += "### Response (choose only one of the options from above):";
  return out;
}

}  // namespace fusebench::gateway
