#include "fusebench/metaeval/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>

#include "fusebench/util/rng.hpp"

namespace fusebench::metaeval {

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

CorrelationResult bootstrap_correlation(const PairedSeries& series, const BootstrapConfig& config) {
  const auto& x = series.metric_values;
  const auto& y = series.human_values;
  if (x.size() != y.size()) {
    throw MetaEvalError(MetaEvalErrc::LengthMismatch, "metric and human series lengths differ");
  }
  if (x.size() < 2) throw MetaEvalError(MetaEvalErrc::TooShort, "bootstrap needs at least 2 points");
  if (config.n_boot == 0 || config.sample_size < 2) {
    throw MetaEvalError(MetaEvalErrc::InvalidArgument, "n_boot must be >= 1 and sample_size >= 2");
  }
  if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
    throw MetaEvalError(MetaEvalErrc::InvalidArgument, "confidence must lie in (0, 1)");
  }

  CorrelationResult result;
  result.method = config.method;
  result.n_boot = config.n_boot;
  result.sample_size = config.sample_size;
  result.point_estimate = correlation(config.method, x, y).value_or(0.0);

  const SplitMix64 root(config.seed);
  std::vector<std::optional<double>> draws(config.n_boot);
  auto resample = [&](std::size_t b) {
    auto rng = root.split(b);
    std::vector<double> xs(config.sample_size);
    std::vector<double> ys(config.sample_size);
    for (std::size_t k = 0; k < config.sample_size; ++k) {
      const auto idx = static_cast<std::size_t>(rng.below(x.size()));
      xs[k] = x[idx];
      ys[k] = y[idx];
    }
    draws[b] = correlation(config.method, xs, ys);
  };

  std::size_t threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, config.n_boot);
  if (threads == 1) {
    for (std::size_t b = 0; b < config.n_boot; ++b) resample(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < config.n_boot; b = next++) resample(b);
      });
    }
  }

  std::vector<double> values;
  values.reserve(draws.size());
  for (const auto& d : draws) {
    if (d) values.push_back(*d);
  }
  result.skipped_resamples = draws.size() - values.size();
  if (values.empty()) {
    throw MetaEvalError(MetaEvalErrc::NoValidResamples,
                        "every resample had a constant series");
  }
  result.bootstrap_mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  const double tail = (1.0 - config.confidence) / 2.0;
  result.ci_low = percentile(values, tail);
  result.ci_high = percentile(values, 1.0 - tail);
  return result;
}

}  // namespace fusebench::metaeval
