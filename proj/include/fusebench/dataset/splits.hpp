#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fusebench/dataset/assemble.hpp"

namespace fusebench::dataset {

struct SplitRatios {
  double train = 1.0;
  double dev = 0.0;
  double test = 0.0;
};

// Partitions review-sets (never individual summaries, so no set straddles
// two splits). Ids are de-duplicated and sorted, shuffled with the seed,
// and cut into contiguous blocks whose sizes are the largest-remainder
// rounding of ratio * n. Throws InvalidRatios unless the ratios are
// non-negative and sum to 1.
SplitPlan assign_splits(std::vector<std::string> review_set_ids, const SplitRatios& ratios,
                        std::uint64_t seed);

}  // namespace fusebench::dataset
