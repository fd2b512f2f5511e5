#include "fusebench/bench/leaderboard.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "fusebench/annotation/http_api.hpp"
#include "fusebench/metrics/errors.hpp"
#include "fusebench/metrics/lexical.hpp"
#include "fusebench/util/clock.hpp"

namespace fusebench::bench {

namespace {

using Json = nlohmann::json;

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", metrics::round1(v));
  return buf;
}

}  // namespace

std::string to_string(BenchErrc code) {
  switch (code) {
    case BenchErrc::IncompleteCoverageOfInstances: return "IncompleteCoverageOfInstances";
    case BenchErrc::DuplicateSystemId: return "DuplicateSystemId";
    case BenchErrc::UnknownInstance: return "UnknownInstance";
    case BenchErrc::DuplicateOutput: return "DuplicateOutput";
    case BenchErrc::EmptySubmission: return "EmptySubmission";
    case BenchErrc::InvalidArgument: return "InvalidArgument";
  }
  return "InvalidArgument";
}

Json to_json(const Submission& s) {
  return {{"system_id", s.system_id},       {"submitted_at", s.submitted_at},
          {"instances", s.instances},       {"faithfulness", s.faithfulness},
          {"coverage", s.coverage},         {"f1", s.f1},
          {"lexical", s.lexical}};
}

Submission submission_from_json(const Json& j) {
  Submission s;
  s.system_id = j.at("system_id").get<std::string>();
  s.submitted_at = j.value("submitted_at", std::string{});
  s.instances = j.value("instances", std::size_t{0});
  s.faithfulness = j.at("faithfulness").get<double>();
  s.coverage = j.at("coverage").get<double>();
  s.f1 = j.at("f1").get<double>();
  s.lexical = j.value("lexical", std::map<std::string, double>{});
  return s;
}

std::map<std::string, HumanMeans> human_means(
    const std::vector<annotation::JudgmentRecord>& records) {
  using annotation::JudgmentAxis;
  // (system, axis) -> instance -> (sum, count)
  std::map<std::pair<std::string, JudgmentAxis>, std::map<std::string, std::pair<double, int>>> acc;
  for (const auto& r : records) {
    if (r.axis != JudgmentAxis::Coherence && r.axis != JudgmentAxis::Redundancy) continue;
    auto& cell = acc[{r.output.system_id, r.axis}][r.output.instance_id];
    cell.first += r.score;
    ++cell.second;
  }
  std::map<std::string, HumanMeans> out;
  for (const auto& [key, per_output] : acc) {
    double sum = 0.0;
    for (const auto& [instance, cell] : per_output) sum += cell.first / cell.second;
    const double mean = sum / static_cast<double>(per_output.size());
    auto& h = out[key.first];
    (key.second == JudgmentAxis::Coherence ? h.coherence : h.redundancy) = mean;
  }
  return out;
}

LeaderboardTable rank_submissions(std::vector<Submission> submissions,
                                  const std::map<std::string, HumanMeans>& human) {
  std::sort(submissions.begin(), submissions.end(), [](const auto& a, const auto& b) {
    if (a.f1 != b.f1) return a.f1 > b.f1;
    if (a.faithfulness != b.faithfulness) return a.faithfulness > b.faithfulness;
    return a.system_id < b.system_id;
  });
  LeaderboardTable table;
  for (auto& s : submissions) {
    LeaderboardRow row;
    row.rank = table.rows.size() + 1;
    if (const auto it = human.find(s.system_id); it != human.end()) row.human = it->second;
    row.submission = std::move(s);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Json to_json(const LeaderboardTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    auto j = to_json(r.submission);
    j["rank"] = r.rank;
    if (r.human.coherence) j["coherence"] = *r.human.coherence;
    if (r.human.redundancy) j["redundancy"] = *r.human.redundancy;
    rows.push_back(std::move(j));
  }
  return {{"rows", rows}};
}

std::string render_text(const LeaderboardTable& table) {
  const bool human = std::any_of(table.rows.begin(), table.rows.end(), [](const auto& r) {
    return r.human.coherence || r.human.redundancy;
  });
  std::size_t width = 6;
  for (const auto& r : table.rows) width = std::max(width, r.submission.system_id.size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  auto cell = [](const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
  };
  std::string out = "Rank  " + pad("System", width) + "  Faithfulness  Coverage    F-1";
  if (human) out += "  Coherence  Redundancy";
  out += '\n';
  for (const auto& r : table.rows) {
    const auto& s = r.submission;
    out += cell(std::to_string(r.rank), 4) + "  " + pad(s.system_id, width) + "  " +
           cell(fmt1(s.faithfulness), 12) + "  " + cell(fmt1(s.coverage), 8) + "  " +
           cell(fmt1(s.f1), 5);
    if (human) {
      auto opt = [](const std::optional<double>& v) {
        if (!v) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", *v);
        return std::string(buf);
      };
      out += "  " + cell(opt(r.human.coherence), 9) + "  " + cell(opt(r.human.redundancy), 10);
    }
    out += '\n';
  }
  return out;
}

std::vector<corpus::SystemOutput> match_outputs(const std::vector<corpus::FiCInstance>& test,
                                                std::vector<corpus::SystemOutput> outputs,
                                                const std::string& system_id) {
  if (system_id.empty()) throw BenchError(BenchErrc::InvalidArgument, "empty system id");
  if (test.empty()) throw BenchError(BenchErrc::EmptySubmission, "no test instances to score");
  std::map<std::string, corpus::SystemOutput> by_instance;
  for (auto& o : outputs) {
    const bool known = std::any_of(test.begin(), test.end(),
                                   [&](const auto& inst) { return inst.instance_id == o.instance_id; });
    if (!known) {
      throw BenchError(BenchErrc::UnknownInstance,
                       "output for '" + o.instance_id + "' matches no test instance");
    }
    const auto id = o.instance_id;
    o.system_id = system_id;
    if (!by_instance.emplace(id, std::move(o)).second) {
      throw BenchError(BenchErrc::DuplicateOutput, "two outputs for instance '" + id + "'");
    }
  }
  std::vector<std::string> missing;
  std::vector<corpus::SystemOutput> ordered;
  for (const auto& inst : test) {
    auto it = by_instance.find(inst.instance_id);
    if (it == by_instance.end()) {
      missing.push_back(inst.instance_id);
    } else {
      ordered.push_back(std::move(it->second));
    }
  }
  if (!missing.empty()) {
    std::string names;
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) names += (i ? ", " : "") + missing[i];
    if (missing.size() > 10) names += ", ...";
    throw BenchError(BenchErrc::IncompleteCoverageOfInstances,
                     std::to_string(missing.size()) + " test instance(s) without output: " + names);
  }
  return ordered;
}

Submission score_submission(const std::vector<corpus::FiCInstance>& test,
                            const std::vector<corpus::SystemOutput>& outputs,
                            const std::string& system_id, gateway::ScorerGateway& scorer,
                            const metrics::EvaluationConfig& config) {
  std::vector<metrics::ScoreReport> reports;
  reports.reserve(outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    reports.push_back(metrics::evaluate_output(test[i], outputs[i], scorer, config));
  }
  const auto summaries = metrics::summarize_by_system(reports);
  Submission s;
  s.system_id = system_id;
  s.submitted_at = utc_timestamp();
  s.instances = reports.size();
  if (!summaries.empty()) {
    const auto& sum = summaries.front();
    s.faithfulness = 100.0 * sum.faithfulness;
    s.coverage = 100.0 * sum.coverage;
    s.f1 = 100.0 * sum.f1;
    for (const auto& [name, v] : sum.lexical) s.lexical[name] = 100.0 * v;
  }
  return s;
}

Leaderboard::Leaderboard(const std::filesystem::path& data_dir) : store_(data_dir, "leaderboard") {
  auto loaded = store_.load();
  if (loaded.snapshot) {
    for (const auto& j : loaded.snapshot->at("submissions")) {
      auto s = submission_from_json(j);
      by_system_[s.system_id] = std::move(s);
    }
  }
  for (const auto& e : loaded.events) apply(e);
}

void Leaderboard::apply(const Json& event) {
  auto s = submission_from_json(event.at("submission"));
  by_system_[s.system_id] = std::move(s);
}

Submission Leaderboard::submit(const std::vector<corpus::FiCInstance>& test,
                               std::vector<corpus::SystemOutput> outputs,
                               const std::string& system_id, gateway::ScorerGateway& scorer,
                               const metrics::EvaluationConfig& config, bool replace) {
  auto check_duplicate = [&] {
    if (!replace && by_system_.count(system_id) != 0) {
      throw BenchError(BenchErrc::DuplicateSystemId,
                       "system '" + system_id + "' is already on the leaderboard");
    }
  };
  {
    std::lock_guard lock(mutex_);
    check_duplicate();
  }
  const auto ordered = match_outputs(test, std::move(outputs), system_id);
  auto scored = score_submission(test, ordered, system_id, scorer, config);
  std::lock_guard lock(mutex_);
  check_duplicate();
  Json event = {{"type", "submission"}, {"submission", to_json(scored)}};
  store_.append(event);
  apply(event);
  return scored;
}

std::vector<Submission> Leaderboard::submissions() const {
  std::lock_guard lock(mutex_);
  std::vector<Submission> out;
  for (const auto& [id, s] : by_system_) out.push_back(s);
  return out;
}

LeaderboardTable Leaderboard::table(const std::map<std::string, HumanMeans>& human) const {
  return rank_submissions(submissions(), human);
}

void register_leaderboard_routes(httplib::Server& server, LeaderboardContext ctx) {
  using annotation::parse_body;
  using annotation::reply_error;
  using annotation::reply_json;

  server.Post("/submissions", [ctx](const httplib::Request& req, httplib::Response& res) {
    if (ctx.scorer == nullptr || ctx.test == nullptr) {
      reply_error(res, 503, "NotConfigured", "no scorer or test split configured for submissions");
      return;
    }
    try {
      const auto body = parse_body(req);
      const auto system_id = body.at("system_id").get<std::string>();
      std::vector<corpus::SystemOutput> outputs;
      for (const auto& o : body.at("outputs")) {
        outputs.push_back(corpus::SystemOutput::from_passage(
            o.at("instance_id").get<std::string>(), system_id, o.at("passage").get<std::string>()));
      }
      const auto s = ctx.leaderboard->submit(*ctx.test, std::move(outputs), system_id, *ctx.scorer,
                                             ctx.config, body.value("replace", false));
      reply_json(res, to_json(s), 201);
    } catch (const BenchError& e) {
      reply_error(res, e.errc() == BenchErrc::DuplicateSystemId ? 409 : 422, e.code(), e.what());
    } catch (const metrics::ScorerCallError& e) {
      reply_error(res, 502, e.code(), e.what());
    } catch (const Error& e) {
      reply_error(res, 422, e.code(), e.what());
    } catch (const Json::exception& e) {
      reply_error(res, 400, "BadRequest", e.what());
    } catch (const std::exception& e) {
      reply_error(res, 500, "Internal", e.what());
    }
  });

  server.Get("/leaderboard", [ctx](const httplib::Request& req, httplib::Response& res) {
    try {
      const auto human = ctx.judgments ? human_means(ctx.judgments()) : std::map<std::string, HumanMeans>{};
      const auto table = ctx.leaderboard->table(human);
      if (req.get_param_value("format") == "text") {
        res.set_content(render_text(table), "text/plain; charset=utf-8");
      } else {
        reply_json(res, to_json(table));
      }
    } catch (const std::exception& e) {
      reply_error(res, 500, "Internal", e.what());
    }
  });
}

}  // namespace fusebench::bench
