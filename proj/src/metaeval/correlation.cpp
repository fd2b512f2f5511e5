#include "fusebench/metaeval/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fusebench::metaeval {

namespace {

void check_pair(Values x, Values y) {
  if (x.size() != y.size()) {
    throw MetaEvalError(MetaEvalErrc::LengthMismatch,
                        "series lengths differ (" + std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) {
    throw MetaEvalError(MetaEvalErrc::TooShort, "correlation needs at least 2 points");
  }
}

struct PairCounts {
  double concordant = 0;
  double discordant = 0;
  double x_only_ties = 0;
  double y_only_ties = 0;
};

PairCounts count_pairs(Values x, Values y) {
  PairCounts c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) {
        c.x_only_ties += 1;
      } else if (dy == 0) {
        c.y_only_ties += 1;
      } else if ((dx > 0) == (dy > 0)) {
        c.concordant += 1;
      } else {
        c.discordant += 1;
      }
    }
  }
  return c;
}

bool is_constant(Values v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

std::string to_string(MetaEvalErrc code) {
  switch (code) {
    case MetaEvalErrc::LengthMismatch: return "LengthMismatch";
    case MetaEvalErrc::TooShort: return "TooShort";
    case MetaEvalErrc::MissingSeries: return "MissingSeries";
    case MetaEvalErrc::DuplicateKey: return "DuplicateKey";
    case MetaEvalErrc::InvalidArgument: return "InvalidArgument";
    case MetaEvalErrc::NoValidResamples: return "NoValidResamples";
  }
  return "MetaEvalError";
}

std::string to_string(CorrelationMethod method) {
  switch (method) {
    case CorrelationMethod::KendallTauB: return "kendall_tau_b";
    case CorrelationMethod::KendallTauA: return "kendall_tau_a";
    case CorrelationMethod::Spearman: return "spearman";
  }
  return "kendall_tau_b";
}

CorrelationMethod parse_method(std::string_view name) {
  if (name == "kendall_tau_b" || name == "kendall" || name == "tau-b") return CorrelationMethod::KendallTauB;
  if (name == "kendall_tau_a" || name == "tau-a") return CorrelationMethod::KendallTauA;
  if (name == "spearman") return CorrelationMethod::Spearman;
  throw MetaEvalError(MetaEvalErrc::InvalidArgument,
                      "unknown correlation method '" + std::string(name) + "'");
}

double kendall_tau_b(Values x, Values y) {
  check_pair(x, y);
  const auto c = count_pairs(x, y);
  const double base = c.concordant + c.discordant;
  const double denom = (base + c.x_only_ties) * (base + c.y_only_ties);
  if (denom == 0) return 0.0;
  return (c.concordant - c.discordant) / std::sqrt(denom);
}

double kendall_tau_a(Values x, Values y) {
  check_pair(x, y);
  const auto c = count_pairs(x, y);
  const double n = static_cast<double>(x.size());
  return (c.concordant - c.discordant) / (n * (n - 1) / 2);
}

std::vector<double> mid_ranks(Values x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult spearman(Values x, Values y) {
  check_pair(x, y);
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return {0.0, true};
  return {sxy / std::sqrt(sxx * syy), false};
}

double spearman_rho(Values x, Values y) { return spearman(x, y).rho; }

std::optional<double> correlation(CorrelationMethod method, Values x, Values y) {
  check_pair(x, y);
  if (is_constant(x) || is_constant(y)) return std::nullopt;
  switch (method) {
    case CorrelationMethod::KendallTauB: return kendall_tau_b(x, y);
    case CorrelationMethod::KendallTauA: return kendall_tau_a(x, y);
    case CorrelationMethod::Spearman: return spearman_rho(x, y);
  }
  return std::nullopt;
}

}  // namespace fusebench::metaeval
