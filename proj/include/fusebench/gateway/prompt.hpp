#pragma once

#include <string>
#include <string_view>

namespace fusebench::gateway {

// Zero-shot NLI prompt. Premise and hypothesis are inserted verbatim (no
// escaping), so embedded newlines survive.
std::string render_nli_prompt(std::string_view premise, std::string_view hypothesis);

}  // namespace fusebench::gateway
