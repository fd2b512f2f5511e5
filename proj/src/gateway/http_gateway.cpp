#include "fusebench/gateway/http_gateway.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fusebench/gateway/prompt.hpp"

namespace fusebench::gateway {

namespace {

using Clock = std::chrono::steady_clock;

struct Attempt {
  std::optional<ScorerResponse> response;
  std::optional<GatewayError> error;
  bool retryable = false;
};

}  // namespace

HttpGateway::HttpGateway(ScorerEndpointConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) {
    throw GatewayError(GatewayErrc::NotConfigured, "scorer base_url is empty");
  }
  if (config_.max_in_flight < 1) {
    throw GatewayError(GatewayErrc::NotConfigured, "max_in_flight must be >= 1");
  }
  const auto scheme_end = config_.base_url.find("://");
  const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_start = config_.base_url.find('/', host_start);
  origin_ = config_.base_url.substr(0, path_start);
  if (path_start != std::string::npos) {
    path_prefix_ = config_.base_url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
}

ScorerResponse HttpGateway::score(const ScorerRequest& request) {
  check_request(request);
  const auto route = config_.kind_routes.find(request.kind);
  if (route == config_.kind_routes.end()) {
    throw GatewayError(GatewayErrc::NotConfigured,
                       "no route configured for kind " + to_string(request.kind));
  }

  nlohmann::json body{
      {"kind", to_string(request.kind)},
      {"premise", request.premise_or_context},
      {"hypothesis", request.hypothesis_or_query},
      {"request_id", request.request_id},
  };
  if (config_.send_nli_prompt && request.kind == ScorerKind::Entailment) {
    body["prompt"] = render_nli_prompt(request.premise_or_context, request.hypothesis_or_query);
  }
  const std::string payload = body.dump();
  const std::string path = path_prefix_ + route->second;

  const auto timeout = config_.timeout;
  auto attempt_once = [&]() -> Attempt {
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    const auto started = Clock::now();
    auto res = client.Post(path, payload, "application/json");
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - started).count();

    if (!res) {
      const auto err = res.error();
      const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                             (err == httplib::Error::Read &&
                              elapsed_ms >= 0.9 * static_cast<double>(timeout.count()));
      return {std::nullopt,
              GatewayError(timed_out ? GatewayErrc::Timeout : GatewayErrc::Unreachable,
                           origin_ + path + ": " + httplib::to_string(err)),
              true};
    }
    if (res->status >= 500) {
      return {std::nullopt,
              GatewayError(GatewayErrc::Unreachable,
                           origin_ + path + ": HTTP " + std::to_string(res->status)),
              true};
    }
    if (res->status >= 400) {
      return {std::nullopt,
              GatewayError(GatewayErrc::RequestRejected,
                           origin_ + path + ": HTTP " + std::to_string(res->status) + " " +
                               res->body),
              false};
    }
    const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("probability") ||
        !parsed.at("probability").is_number()) {
      return {std::nullopt,
              GatewayError(GatewayErrc::MalformedResponse,
                           "response for " + request.request_id + " lacks a numeric probability"),
              false};
    }
    const std::string echoed = parsed.value("request_id", request.request_id);
    if (echoed != request.request_id) {
      return {std::nullopt,
              GatewayError(GatewayErrc::MalformedResponse,
                           "response request_id '" + echoed + "' does not match '" +
                               request.request_id + "'"),
              false};
    }
    try {
      ScorerResponse out;
      out.request_id = request.request_id;
      out.probability = check_probability(parsed.at("probability").get<double>(),
                                          request.request_id);
      out.latency_ms = elapsed_ms;
      return {out, std::nullopt, false};
    } catch (const GatewayError& e) {
      return {std::nullopt, e, false};
    }
  };

  auto backoff = config_.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    Attempt result = attempt_once();
    if (result.response) {
      result.response->retries = attempt;
      return *result.response;
    }
    if (!result.retryable || attempt >= config_.max_retries) throw *result.error;
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

}  // namespace fusebench::gateway
