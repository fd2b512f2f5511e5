#pragma once

#include <stdexcept>
#include <string>

namespace fusebench {

// Base of every error raised by the library. `code()` is a stable,
// machine-readable name (e.g. "WrongFocusedSentence") that the CLI and the
// HTTP layer surface verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Formats `{"code": ..., "message": ...}` on one line.
std::string structured_error_line(const std::string& code,
                                  const std::string& message);

}  // namespace fusebench
