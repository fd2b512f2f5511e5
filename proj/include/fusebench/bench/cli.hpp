#pragma once

#include <ostream>

namespace fusebench::bench {

// Runs the fusebench command line. Returns 0 on success, 2 for usage
// errors (usage text on `err`), 1 for failures (one structured error line
// on `err`).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fusebench::bench
