#pragma once

#include <string>

#include "fusebench/util/error.hpp"

namespace fusebench::dataset {

enum class DatasetErrc {
  DanglingReference,
  InvalidAlignment,
  EmptyInput,
  InvalidRatios,
  TooFewSentences,
  NoAlignments,
  UnbalancedMarkers,
  NestedMarkers,
  MarkerCollision,
  NotEnoughExemplars,
  UnknownEncodingMode,
};

std::string to_string(DatasetErrc code);

class DatasetError : public Error {
 public:
  DatasetError(DatasetErrc code, const std::string& message)
      : Error(to_string(code), message), errc_(code) {}
  DatasetErrc errc() const noexcept { return errc_; }

 private:
  DatasetErrc errc_;
};

}  // namespace fusebench::dataset
