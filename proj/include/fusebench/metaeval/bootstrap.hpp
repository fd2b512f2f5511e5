#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fusebench/metaeval/correlation.hpp"

namespace fusebench::metaeval {

struct PairedSeries {
  std::vector<double> metric_values;
  std::vector<double> human_values;
  std::vector<std::string> labels;
};

struct BootstrapConfig {
  CorrelationMethod method = CorrelationMethod::KendallTauB;
  std::size_t n_boot = 1000;
  std::size_t sample_size = 70;
  double confidence = 0.95;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct CorrelationResult {
  CorrelationMethod method = CorrelationMethod::KendallTauB;
  double point_estimate = 0.0;
  double bootstrap_mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_boot = 0;
  std::size_t sample_size = 0;
  std::size_t skipped_resamples = 0;  // constant in either series

  friend bool operator==(const CorrelationResult&, const CorrelationResult&) = default;
};

// Linear-interpolation percentile (q in [0, 1]) of sorted values.
double percentile(const std::vector<double>& sorted, double q);

// Resample i draws sample_size indices with replacement from stream
// SplitMix64(seed).split(i). Percentile CI over non-degenerate resamples.
// Throws LengthMismatch, TooShort, InvalidArgument, or NoValidResamples
// when every resample is degenerate.
CorrelationResult bootstrap_correlation(const PairedSeries& series, const BootstrapConfig& config = {});

}  // namespace fusebench::metaeval
