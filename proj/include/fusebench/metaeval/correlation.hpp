#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fusebench/util/error.hpp"

namespace fusebench::metaeval {

enum class MetaEvalErrc {
  LengthMismatch,
  TooShort,
  MissingSeries,
  DuplicateKey,
  InvalidArgument,
  NoValidResamples,
};

std::string to_string(MetaEvalErrc code);

class MetaEvalError : public Error {
 public:
  MetaEvalError(MetaEvalErrc code, const std::string& message)
      : Error(to_string(code), message), errc_(code) {}
  MetaEvalErrc errc() const noexcept { return errc_; }

 private:
  MetaEvalErrc errc_;
};

enum class CorrelationMethod { KendallTauB, KendallTauA, Spearman };

std::string to_string(CorrelationMethod method);
CorrelationMethod parse_method(std::string_view name);

using Values = std::span<const double>;

// (C - D) / sqrt((C + D + Tx)(C + D + Ty)), Tx/Ty = pairs tied only in x/y.
// 0 when either factor is 0. Throws LengthMismatch or TooShort (n < 2).
double kendall_tau_b(Values x, Values y);

// (C - D) / (n(n-1)/2).
double kendall_tau_a(Values x, Values y);

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> mid_ranks(Values x);

struct SpearmanResult {
  double rho = 0.0;
  bool zero_variance = false;  // rho forced to 0
};

// Pearson correlation of mid-ranks.
SpearmanResult spearman(Values x, Values y);
double spearman_rho(Values x, Values y);

// nullopt when either series is constant.
std::optional<double> correlation(CorrelationMethod method, Values x, Values y);

}  // namespace fusebench::metaeval
