#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fusebench/util/error.hpp"

namespace fusebench::gateway {

enum class ScorerKind { Entailment, Containment, EmbeddingSimilarity };

std::string to_string(ScorerKind kind);
ScorerKind parse_kind(std::string_view name);

// Entailment: P(premise entails hypothesis) among entail/contradict/neutral.
// Containment: P("yes") that the query content is present in the context.
struct ScorerRequest {
  ScorerKind kind = ScorerKind::Entailment;
  std::string premise_or_context;
  std::string hypothesis_or_query;
  std::string request_id;
};

struct ScorerResponse {
  std::string request_id;
  double probability = 0.0;
  double latency_ms = 0.0;
  int retries = 0;
};

enum class GatewayErrc {
  Timeout,
  MalformedResponse,
  Unreachable,
  RequestRejected,
  InvalidRequest,
  NotConfigured,
};

std::string to_string(GatewayErrc code);

class GatewayError : public Error {
 public:
  GatewayError(GatewayErrc code, const std::string& message)
      : Error(to_string(code), message), errc_(code) {}
  GatewayErrc errc() const noexcept { return errc_; }

 private:
  GatewayErrc errc_;
};

// One slot of a batch: the response, or the error for that request alone.
using BatchResult = std::variant<ScorerResponse, GatewayError>;

// Throws GatewayError(InvalidRequest) when either text is empty.
void check_request(const ScorerRequest& request);

// Rejects NaN and anything outside [0, 1]; values are never clamped.
double check_probability(double p, const std::string& request_id);

// Uniform handle over scoring backends. Handles are shareable across
// threads; implementations must make score() safe to call concurrently.
class ScorerGateway {
 public:
  virtual ~ScorerGateway() = default;

  virtual ScorerResponse score(const ScorerRequest& request) = 0;

  // Runs up to max_in_flight() requests concurrently. Result i always
  // belongs to request i; failures are reported per slot.
  virtual std::vector<BatchResult> score_batch(std::span<const ScorerRequest> requests);

  virtual std::size_t max_in_flight() const { return 1; }
};

struct ScorerEndpointConfig {
  std::string base_url;
  std::chrono::milliseconds timeout{10000};
  int max_retries = 2;
  std::size_t max_in_flight = 4;
  std::chrono::milliseconds initial_backoff{50};
  std::map<ScorerKind, std::string> kind_routes{
      {ScorerKind::Entailment, "/entailment"},
      {ScorerKind::Containment, "/containment"},
      {ScorerKind::EmbeddingSimilarity, "/similarity"},
  };
  // Adds the rendered zero-shot NLI prompt as a "prompt" field on
  // entailment requests, for backends that take raw text.
  bool send_nli_prompt = false;
};

// Reads {base_url, timeout_ms, max_retries, max_in_flight, initial_backoff_ms,
// routes:{kind:path}, send_nli_prompt} from a JSON file; missing keys keep
// defaults.
ScorerEndpointConfig load_endpoint_config(const std::string& path);

}  // namespace fusebench::gateway
