#pragma once

#include "fusebench/gateway/gateway.hpp"

namespace fusebench::gateway {

// HTTP+JSON client. POSTs {"kind","premise","hypothesis","request_id"} to
// base_url + kind route and expects {"request_id","probability"}. Timeouts,
// connection failures and 5xx responses are retried with exponential
// backoff up to max_retries extra attempts; 4xx and malformed bodies are not.
class HttpGateway final : public ScorerGateway {
 public:
  explicit HttpGateway(ScorerEndpointConfig config);

  ScorerResponse score(const ScorerRequest& request) override;
  std::size_t max_in_flight() const override { return config_.max_in_flight; }

  const ScorerEndpointConfig& config() const noexcept { return config_; }

 private:
  ScorerEndpointConfig config_;
  std::string origin_;       // scheme://host[:port]
  std::string path_prefix_;  // any path component of base_url
};

}  // namespace fusebench::gateway
