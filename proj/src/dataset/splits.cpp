#include "fusebench/dataset/splits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fusebench/dataset/errors.hpp"
#include "fusebench/util/rng.hpp"

namespace fusebench::dataset {

SplitPlan assign_splits(std::vector<std::string> ids, const SplitRatios& ratios,
                        std::uint64_t seed) {
  const std::array<double, 3> r{ratios.train, ratios.dev, ratios.test};
  for (double x : r) {
    if (!(x >= 0.0)) throw DatasetError(DatasetErrc::InvalidRatios, "negative split ratio");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) {
    throw DatasetError(DatasetErrc::InvalidRatios, "split ratios must sum to 1");
  }

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  SplitMix64 rng(seed);
  rng.shuffle(std::span<std::string>(ids));

  const std::size_t n = ids.size();
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = r[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainders[i] = exact - static_cast<double>(counts[i]);
  }
  std::size_t assigned = counts[0] + counts[1] + counts[2];
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % 3) {
    if (r[order[k]] > 0.0) {
      ++counts[order[k]];
      ++assigned;
    }
  }

  const std::array<corpus::Split, 3> splits{corpus::Split::Train, corpus::Split::Dev,
                                            corpus::Split::Test};
  SplitPlan plan;
  std::size_t cursor = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t c = 0; c < counts[s] && cursor < n; ++c) plan[ids[cursor++]] = splits[s];
  }
  return plan;
}

}  // namespace fusebench::dataset
