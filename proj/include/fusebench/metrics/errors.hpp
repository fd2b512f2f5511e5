#pragma once

#include <cstddef>
#include <string>

#include "fusebench/gateway/gateway.hpp"
#include "fusebench/util/error.hpp"

namespace fusebench::metrics {

enum class MetricsErrc {
  EmptyHighlights,
  EmptyOutput,
  InstanceMismatch,
  LengthMismatch,
  InvalidArgument,
};

std::string to_string(MetricsErrc code);

class MetricsError : public Error {
 public:
  MetricsError(MetricsErrc code, const std::string& message)
      : Error(to_string(code), message), errc_(code) {}
  MetricsErrc errc() const noexcept { return errc_; }

 private:
  MetricsErrc errc_;
};

// A scorer call failed. Keeps the gateway's code and records which metric
// and which unit (output sentence or highlight) triggered it.
class ScorerCallError : public Error {
 public:
  ScorerCallError(const gateway::GatewayError& cause, std::string metric, std::size_t unit_index);

  gateway::GatewayErrc gateway_errc() const noexcept { return gateway_errc_; }
  const std::string& metric() const noexcept { return metric_; }
  std::size_t unit_index() const noexcept { return unit_index_; }

 private:
  gateway::GatewayErrc gateway_errc_;
  std::string metric_;
  std::size_t unit_index_;
};

}  // namespace fusebench::metrics
