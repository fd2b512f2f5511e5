#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "fusebench/gateway/gateway.hpp"

namespace fusebench::gateway {

// In-process deterministic scorer. Scripted (kind, premise, hypothesis)
// triples return their scripted probability; everything else returns the
// per-kind default if set, else the global default. Configure before
// sharing across threads.
class MockGateway final : public ScorerGateway {
 public:
  explicit MockGateway(double default_probability = 0.5, std::size_t max_in_flight = 1);

  MockGateway& script(ScorerKind kind, std::string_view premise,
                      std::string_view hypothesis, double probability);
  MockGateway& set_kind_default(ScorerKind kind, double probability);

  ScorerResponse score(const ScorerRequest& request) override;
  std::size_t max_in_flight() const override { return max_in_flight_; }

  std::size_t calls() const noexcept { return calls_.load(); }

  static std::uint64_t pair_hash(std::string_view premise, std::string_view hypothesis);

 private:
  double default_;
  std::size_t max_in_flight_;
  std::map<std::pair<ScorerKind, std::uint64_t>, double> script_;
  std::map<ScorerKind, double> kind_defaults_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace fusebench::gateway
