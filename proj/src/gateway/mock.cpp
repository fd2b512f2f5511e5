#include "fusebench/gateway/mock.hpp"

#include "fusebench/util/rng.hpp"

namespace fusebench::gateway {

MockGateway::MockGateway(double default_probability, std::size_t max_in_flight)
    : default_(check_probability(default_probability, "mock-default")),
      max_in_flight_(std::max<std::size_t>(1, max_in_flight)) {}

std::uint64_t MockGateway::pair_hash(std::string_view premise,
                                     std::string_view hypothesis) {
  return mix64(stable_hash(premise) ^ mix64(stable_hash(hypothesis)));
}

MockGateway& MockGateway::script(ScorerKind kind, std::string_view premise,
                                 std::string_view hypothesis, double probability) {
  script_[{kind, pair_hash(premise, hypothesis)}] = check_probability(probability, "script");
  return *this;
}

MockGateway& MockGateway::set_kind_default(ScorerKind kind, double probability) {
  kind_defaults_[kind] = check_probability(probability, "kind-default");
  return *this;
}

ScorerResponse MockGateway::score(const ScorerRequest& request) {
  check_request(request);
  ++calls_;
  ScorerResponse response;
  response.request_id = request.request_id;
  const auto key = std::make_pair(
      request.kind, pair_hash(request.premise_or_context, request.hypothesis_or_query));
  if (auto it = script_.find(key); it != script_.end()) {
    response.probability = it->second;
  } else if (auto kd = kind_defaults_.find(request.kind); kd != kind_defaults_.end()) {
    response.probability = kd->second;
  } else {
    response.probability = default_;
  }
  return response;
}

}  // namespace fusebench::gateway
