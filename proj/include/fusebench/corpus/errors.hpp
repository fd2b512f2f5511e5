#pragma once

#include <string>

#include "fusebench/util/error.hpp"

namespace fusebench::corpus {

enum class CorpusErrc {
  InvalidUtf8,
  MalformedDocument,
  DuplicateId,
};

std::string to_string(CorpusErrc code);

class CorpusError : public Error {
 public:
  CorpusError(CorpusErrc code, const std::string& message)
      : Error(to_string(code), message), errc_(code) {}
  CorpusErrc errc() const noexcept { return errc_; }

 private:
  CorpusErrc errc_;
};

}  // namespace fusebench::corpus
