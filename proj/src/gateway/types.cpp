#include <atomic>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "fusebench/gateway/gateway.hpp"
#include "fusebench/util/journal.hpp"

namespace fusebench::gateway {

std::string to_string(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::Entailment: return "entailment";
    case ScorerKind::Containment: return "containment";
    case ScorerKind::EmbeddingSimilarity: return "embedding_similarity";
  }
  return "entailment";
}

ScorerKind parse_kind(std::string_view name) {
  if (name == "entailment") return ScorerKind::Entailment;
  if (name == "containment") return ScorerKind::Containment;
  if (name == "embedding_similarity") return ScorerKind::EmbeddingSimilarity;
  throw GatewayError(GatewayErrc::InvalidRequest,
                     "unknown scorer kind '" + std::string(name) + "'");
}

std::string to_string(GatewayErrc code) {
  switch (code) {
    case GatewayErrc::Timeout: return "Timeout";
    case GatewayErrc::MalformedResponse: return "MalformedResponse";
    case GatewayErrc::Unreachable: return "Unreachable";
    case GatewayErrc::RequestRejected: return "RequestRejected";
    case GatewayErrc::InvalidRequest: return "InvalidRequest";
    case GatewayErrc::NotConfigured: return "NotConfigured";
  }
  return "GatewayError";
}

void check_request(const ScorerRequest& request) {
  if (request.premise_or_context.empty() || request.hypothesis_or_query.empty()) {
    throw GatewayError(GatewayErrc::InvalidRequest,
                       "request " + request.request_id + " has an empty text");
  }
}

double check_probability(double p, const std::string& request_id) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw GatewayError(GatewayErrc::MalformedResponse,
                       "probability " + std::to_string(p) + " for request " +
                           request_id + " is outside [0, 1]");
  }
  return p;
}

std::vector<BatchResult> ScorerGateway::score_batch(
    std::span<const ScorerRequest> requests) {
  std::vector<BatchResult> results(requests.size(),
                                   BatchResult{GatewayError(GatewayErrc::Unreachable, "not run")});
  auto run_one = [&](std::size_t i) {
    try {
      results[i] = score(requests[i]);
    } catch (const GatewayError& e) {
      results[i] = e;
    } catch (const std::exception& e) {
      results[i] = GatewayError(GatewayErrc::Unreachable, e.what());
    }
  };

  const std::size_t workers = std::min(std::max<std::size_t>(1, max_in_flight()),
                                       requests.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < requests.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < requests.size(); i = next++) run_one(i);
      });
    }
  }
  return results;
}

ScorerEndpointConfig load_endpoint_config(const std::string& path) {
  const auto j = nlohmann::json::parse(read_file(path));
  ScorerEndpointConfig config;
  config.base_url = j.value("base_url", config.base_url);
  config.timeout = std::chrono::milliseconds(j.value("timeout_ms", config.timeout.count()));
  config.max_retries = j.value("max_retries", config.max_retries);
  config.max_in_flight = j.value("max_in_flight", config.max_in_flight);
  config.initial_backoff =
      std::chrono::milliseconds(j.value("initial_backoff_ms", config.initial_backoff.count()));
  config.send_nli_prompt = j.value("send_nli_prompt", config.send_nli_prompt);
  if (j.contains("routes")) {
    for (const auto& [kind, route] : j.at("routes").items()) {
      config.kind_routes[parse_kind(kind)] = route.get<std::string>();
    }
  }
  if (config.max_in_flight < 1) {
    throw GatewayError(GatewayErrc::NotConfigured, "max_in_flight must be >= 1");
  }
  return config;
}

}  // namespace fusebench::gateway
