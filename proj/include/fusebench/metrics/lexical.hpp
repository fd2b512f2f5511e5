#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusebench::metrics {

struct MetricScore {
  std::string name;
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> f1;
  double value = 0.0;  // primary scalar
};

// Harmonic mean; 0 when both inputs are 0.
double harmonic_mean(double a, double b);

// Rounds half away from zero to one decimal.
double round1(double x);

// Harmonic mean of two 0-100 scores, rounded to one decimal.
double harmonic_f1(double faithfulness, double coverage);

// Lowercased word tokens of `text`; punctuation runs are dropped.
std::vector<std::string> lexical_tokens(std::string_view text);

using Tokens = std::span<const std::string>;

// Clipped n-gram overlap. Tokens are compared lowercased. Any zero
// denominator yields 0. Throws MetricsError(InvalidArgument) for n == 0.
MetricScore rouge_n(Tokens reference, Tokens candidate, std::size_t n);

// Longest-common-subsequence recall/precision.
MetricScore rouge_l(Tokens reference, Tokens candidate);

// Unigram alignment (exact, then Porter stem) scored as
// Fmean * (1 - 0.5 * (chunks / matches)^3), Fmean = 10PR / (R + 9P).
// No synonym stage. value is the score; f1 is the plain harmonic mean.
MetricScore meteor_lite(Tokens reference, Tokens candidate);

}  // namespace fusebench::metrics
