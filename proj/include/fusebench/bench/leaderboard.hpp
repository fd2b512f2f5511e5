#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "fusebench/annotation/types.hpp"
#include "fusebench/corpus/types.hpp"
#include "fusebench/gateway/gateway.hpp"
#include "fusebench/metrics/report.hpp"
#include "fusebench/util/error.hpp"
#include "fusebench/util/journal.hpp"

namespace fusebench::bench {

enum class BenchErrc {
  IncompleteCoverageOfInstances,
  DuplicateSystemId,
  UnknownInstance,
  DuplicateOutput,
  EmptySubmission,
  InvalidArgument,
};

std::string to_string(BenchErrc code);

class BenchError : public Error {
 public:
  BenchError(BenchErrc code, const std::string& message)
      : Error(to_string(code), message), errc_(code) {}
  BenchErrc errc() const noexcept { return errc_; }

 private:
  BenchErrc errc_;
};

// Aggregate scores are means over the scored instances on the 0-100 scale,
// stored at full precision.
struct Submission {
  std::string system_id;
  std::string submitted_at;  // ISO 8601 UTC
  std::size_t instances = 0;
  double faithfulness = 0.0;
  double coverage = 0.0;
  double f1 = 0.0;
  std::map<std::string, double> lexical;
};

nlohmann::json to_json(const Submission& submission);
Submission submission_from_json(const nlohmann::json& j);

// Human Likert means per system (mean over that system's outputs of the
// per-output judge mean).
struct HumanMeans {
  std::optional<double> coherence;
  std::optional<double> redundancy;
};
std::map<std::string, HumanMeans> human_means(const std::vector<annotation::JudgmentRecord>& records);

struct LeaderboardRow {
  std::size_t rank = 0;
  Submission submission;
  HumanMeans human;
};

struct LeaderboardTable {
  std::vector<LeaderboardRow> rows;
};

// Descending f1, then descending faithfulness, then system_id ascending.
LeaderboardTable rank_submissions(std::vector<Submission> submissions,
                                  const std::map<std::string, HumanMeans>& human = {});
nlohmann::json to_json(const LeaderboardTable& table);
// Values rounded to one decimal here and nowhere else.
std::string render_text(const LeaderboardTable& table);

// Checks that `outputs` hold exactly one output per instance in `test`,
// all for `system_id`, and returns them in `test` order.
std::vector<corpus::SystemOutput> match_outputs(const std::vector<corpus::FiCInstance>& test,
                                                std::vector<corpus::SystemOutput> outputs,
                                                const std::string& system_id);

// Scores `outputs` against `test` and averages per system.
Submission score_submission(const std::vector<corpus::FiCInstance>& test,
                            const std::vector<corpus::SystemOutput>& outputs,
                            const std::string& system_id, gateway::ScorerGateway& scorer,
                            const metrics::EvaluationConfig& config = {});

// Journal-backed leaderboard. Writes are serialized; a submission is
// appended only after every output has been scored, so a failed scoring run
// leaves the journal unchanged.
class Leaderboard {
 public:
  explicit Leaderboard(const std::filesystem::path& data_dir);

  Submission submit(const std::vector<corpus::FiCInstance>& test,
                    std::vector<corpus::SystemOutput> outputs, const std::string& system_id,
                    gateway::ScorerGateway& scorer, const metrics::EvaluationConfig& config = {},
                    bool replace = false);

  std::vector<Submission> submissions() const;
  LeaderboardTable table(const std::map<std::string, HumanMeans>& human = {}) const;

 private:
  void apply(const nlohmann::json& event);

  mutable std::mutex mutex_;
  EventStore store_;
  std::map<std::string, Submission> by_system_;
};

struct LeaderboardContext {
  Leaderboard* leaderboard = nullptr;
  const std::vector<corpus::FiCInstance>* test = nullptr;
  gateway::ScorerGateway* scorer = nullptr;
  metrics::EvaluationConfig config;
  // Optional source of Likert judgments for the human columns.
  std::function<std::vector<annotation::JudgmentRecord>()> judgments;
};

// POST /submissions {system_id, outputs:[{instance_id, passage}], replace?}
// GET  /leaderboard (JSON; ?format=text for the plain table)
void register_leaderboard_routes(httplib::Server& server, LeaderboardContext context);

}  // namespace fusebench::bench
