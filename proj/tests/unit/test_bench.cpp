#include <doctest.h>

#include <fstream>
#include <memory>
#include <sstream>

#include <httplib.h>

#include "fusebench/bench/cli.hpp"
#include "fusebench/bench/leaderboard.hpp"
#include "fusebench/corpus/interchange.hpp"
#include "fusebench/dataset/encoding.hpp"
#include "fusebench/gateway/mock.hpp"
#include "fusebench/util/journal.hpp"
#include "support/fixtures.hpp"
#include "support/test_server.hpp"

using namespace fusebench;
using namespace fusebench::bench;
using corpus::Span;
using fusebench::testing::align_sentence;
using fusebench::testing::make_instance;
using fusebench::testing::make_review_set;
using fusebench::testing::TempDir;
using gateway::MockGateway;
using gateway::ScorerKind;
using Json = nlohmann::json;

namespace {

std::vector<corpus::FiCInstance> test_instances() {
  std::vector<corpus::FiCInstance> out;
  for (int i = 0; i < 3; ++i) {
    auto rs = make_review_set("rs" + std::to_string(i),
                              {"The pool was great. Rooms were clean.", "Staff was rude."});
    const std::string summary = "The pool was great. The staff was rude.";
    const auto doc = corpus::Document::from_text("x", summary);
    auto inst = make_instance("inst" + std::to_string(i), rs, summary,
                              {align_sentence(doc, 0, "r0", {{0, 19}}),
                               align_sentence(doc, 1, "r1", {{0, 15}})});
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<corpus::SystemOutput> outputs_for(const std::vector<corpus::FiCInstance>& test,
                                              const std::string& system) {
  std::vector<corpus::SystemOutput> out;
  for (const auto& inst : test) {
    out.push_back(corpus::SystemOutput::from_passage(inst.instance_id, system,
                                                     "The pool was great. Staff was rude."));
  }
  return out;
}

std::unique_ptr<MockGateway> scripted(double entail, double contain) {
  auto g = std::make_unique<MockGateway>(0.5, 1);
  g->set_kind_default(ScorerKind::Entailment, entail);
  g->set_kind_default(ScorerKind::Containment, contain);
  return g;
}

class FailingGateway final : public gateway::ScorerGateway {
 public:
  explicit FailingGateway(std::size_t fail_at) : fail_at_(fail_at) {}
  gateway::ScorerResponse score(const gateway::ScorerRequest& r) override {
    if (++calls_ == fail_at_) {
      throw gateway::GatewayError(gateway::GatewayErrc::Unreachable, "scorer down");
    }
    return {r.request_id, 0.9, 0.0, 0};
  }

 private:
  std::size_t fail_at_;
  std::size_t calls_ = 0;
};

template <typename F>
BenchErrc bench_errc(F&& f) {
  try {
    f();
  } catch (const BenchError& e) {
    return e.errc();
  }
  FAIL("expected a BenchError");
  return BenchErrc::InvalidArgument;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "fusebench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_outputs(const TempDir& dir, const std::string& name,
                          const std::vector<corpus::SystemOutput>& outputs) {
  std::string text;
  for (const auto& o : outputs) {
    text += Json{{"instance_id", o.instance_id}, {"passage", o.passage}}.dump() + "\n";
  }
  const auto path = (dir.path() / name).string();
  write_file_atomic(path, text);
  return path;
}

std::string save_fixture(const TempDir& dir, std::vector<corpus::FiCInstance> instances,
                         corpus::Split split = corpus::Split::Test) {
  for (auto& inst : instances) inst.split = split;
  const auto path = dir.path() / "instances";
  corpus::save_instances(path, instances);
  return path.string();
}

}  // namespace

TEST_CASE("leaderboard: ranking by F-1 from scored submissions") {
  TempDir dir("bench_rank");
  const auto test = test_instances();
  Leaderboard board(dir.path());
  auto a = scripted(0.728, 0.864);
  auto b = scripted(0.537, 0.769);
  const auto sa = board.submit(test, outputs_for(test, "A"), "A", *a);
  const auto sb = board.submit(test, outputs_for(test, "B"), "B", *b);
  CHECK(sa.faithfulness == doctest::Approx(72.8));
  CHECK(sa.coverage == doctest::Approx(86.4));
  CHECK(metrics::round1(sa.f1) == doctest::Approx(79.0));
  CHECK(metrics::round1(sb.f1) == doctest::Approx(63.2));
  CHECK(sa.instances == 3);

  const auto table = board.table();
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].submission.system_id == "A");
  CHECK(table.rows[0].rank == 1);
  CHECK(table.rows[1].submission.system_id == "B");
  const auto text = render_text(table);
  CHECK(text.find("79.0") != std::string::npos);
  CHECK(text.find("63.2") != std::string::npos);

  Leaderboard reloaded(dir.path());
  CHECK(reloaded.table().rows.size() == 2);
  CHECK(reloaded.table().rows[0].submission.f1 == sa.f1);
}

TEST_CASE("leaderboard: perfect mock, tie rule and hand-sorted order") {
  TempDir dir("bench_perfect");
  const auto test = test_instances();
  Leaderboard board(dir.path());
  MockGateway perfect(1.0);
  const auto s = board.submit(test, outputs_for(test, "P"), "P", perfect);
  CHECK(s.faithfulness == doctest::Approx(100.0));
  CHECK(s.coverage == doctest::Approx(100.0));
  CHECK(s.f1 == doctest::Approx(100.0));

  auto sub = [](std::string id, double f, double c, double f1) {
    Submission s;
    s.system_id = std::move(id);
    s.faithfulness = f;
    s.coverage = c;
    s.f1 = f1;
    return s;
  };
  auto tie = rank_submissions({sub("low", 75, 86.9, 80.0), sub("high", 85, 75.6, 80.0)});
  CHECK(tie.rows[0].submission.system_id == "high");
  auto same = rank_submissions({sub("b", 80, 80, 80), sub("a", 80, 80, 80)});
  CHECK(same.rows[0].submission.system_id == "a");
  // (90,60) -> 72.0, (70,75) -> 72.4, (80,80) -> 80.0
  auto three = rank_submissions({sub("s1", 90, 60, 72.0), sub("s2", 70, 75, 72.41), sub("s3", 80, 80, 80)});
  CHECK(three.rows[0].submission.system_id == "s3");
  CHECK(three.rows[1].submission.system_id == "s2");
  CHECK(three.rows[2].submission.system_id == "s1");

  const auto empty = render_text(rank_submissions({}));
  CHECK(empty == "Rank  System  Faithfulness  Coverage    F-1\n");
}

TEST_CASE("leaderboard: coverage checks, duplicates and atomicity") {
  TempDir dir("bench_checks");
  const auto test = test_instances();
  Leaderboard board(dir.path());
  MockGateway g(0.8);

  auto partial = outputs_for(test, "A");
  partial.pop_back();
  try {
    board.submit(test, partial, "A", g);
    FAIL("expected IncompleteCoverageOfInstances");
  } catch (const BenchError& e) {
    CHECK(e.errc() == BenchErrc::IncompleteCoverageOfInstances);
    CHECK(std::string(e.what()).find("inst2") != std::string::npos);
  }
  auto extra = outputs_for(test, "A");
  extra.push_back(corpus::SystemOutput::from_passage("ghost", "A", "Hi."));
  CHECK(bench_errc([&] { board.submit(test, extra, "A", g); }) == BenchErrc::UnknownInstance);
  auto twice = outputs_for(test, "A");
  twice.push_back(twice.front());
  CHECK(bench_errc([&] { board.submit(test, twice, "A", g); }) == BenchErrc::DuplicateOutput);

  board.submit(test, outputs_for(test, "A"), "A", g);
  CHECK(bench_errc([&] { board.submit(test, outputs_for(test, "A"), "A", g); }) ==
        BenchErrc::DuplicateSystemId);

  const auto journal = dir.path() / "leaderboard.journal.ndjson";
  const auto before = read_file(journal);
  FailingGateway failing(4);
  CHECK_THROWS(board.submit(test, outputs_for(test, "Z"), "Z", failing));
  CHECK(read_file(journal) == before);
  CHECK(board.submissions().size() == 1);

  MockGateway better(0.9);
  const auto replaced = board.submit(test, outputs_for(test, "A"), "A", better, {}, true);
  CHECK(replaced.faithfulness == doctest::Approx(90.0));
  CHECK(board.submissions().size() == 1);
}

TEST_CASE("leaderboard: human means") {
  using annotation::JudgmentAxis;
  std::vector<annotation::JudgmentRecord> records = {
      {"j1", {"i1", "A"}, JudgmentAxis::Coherence, 4},
      {"j2", {"i1", "A"}, JudgmentAxis::Coherence, 2},
      {"j1", {"i2", "A"}, JudgmentAxis::Coherence, 5},
      {"j1", {"i1", "B"}, JudgmentAxis::Redundancy, 3},
      {"j1", {"i1", "B"}, JudgmentAxis::Faithfulness, 7},
  };
  const auto means = human_means(records);
  CHECK(*means.at("A").coherence == doctest::Approx(4.0));  // (3 + 5) / 2
  CHECK_FALSE(means.at("A").redundancy);
  CHECK(*means.at("B").redundancy == doctest::Approx(3.0));
  CHECK_FALSE(means.at("B").coherence);
}

TEST_CASE("leaderboard: http routes") {
  TempDir dir("bench_http");
  const auto test = test_instances();
  Leaderboard board(dir.path());
  auto scorer = scripted(0.728, 0.864);
  fusebench::testing::TestServer server;
  LeaderboardContext ctx;
  ctx.leaderboard = &board;
  ctx.test = &test;
  ctx.scorer = scorer.get();
  register_leaderboard_routes(server.server(), ctx);
  server.start();
  httplib::Client cli(server.url());

  Json outputs = Json::array();
  for (const auto& inst : test) outputs.push_back({{"instance_id", inst.instance_id}, {"passage", "The pool was great."}});
  auto res = cli.Post("/submissions", Json{{"system_id", "A"}, {"outputs", outputs}}.dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  res = cli.Post("/submissions", Json{{"system_id", "A"}, {"outputs", outputs}}.dump(), "application/json");
  CHECK(res->status == 409);
  outputs.erase(outputs.begin());
  res = cli.Post("/submissions", Json{{"system_id", "B"}, {"outputs", outputs}}.dump(), "application/json");
  CHECK(res->status == 422);
  CHECK(Json::parse(res->body)["code"] == "IncompleteCoverageOfInstances");

  res = cli.Get("/leaderboard");
  const auto body = Json::parse(res->body);
  REQUIRE(body["rows"].size() == 1);
  CHECK(body["rows"][0]["system_id"] == "A");
  CHECK(body["rows"][0]["f1"].get<double>() == doctest::Approx(79.0).epsilon(0.001));
  res = cli.Get("/leaderboard?format=text");
  CHECK(res->body.find("79.0") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}).code == 2);
  const auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run({"stats"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: failures exit 1 with a structured error line") {
  const auto r = run({"stats", "--in", "/nonexistent/fusebench"});
  CHECK(r.code == 1);
  const auto line = Json::parse(r.err);
  CHECK(line.contains("code"));
  CHECK(line.contains("message"));

  TempDir dir("cli_noscorer");
  const auto in = save_fixture(dir, test_instances());
  const auto no_scorer = run({"evaluate", "--instances", in});
  if (std::getenv("FUSEBENCH_SCORER_URL") == nullptr) {
    CHECK(no_scorer.code == 1);
    CHECK(Json::parse(no_scorer.err)["code"] == "NotConfigured");
  }
}

TEST_CASE("cli: evaluate with a perfect mock scores 100") {
  TempDir dir("cli_eval");
  const auto in = save_fixture(dir, test_instances());
  const auto r = run({"evaluate", "--mock-scorer", "1.0", "--instances", in});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("reference") != std::string::npos);
  CHECK(r.out.find("100.0") != std::string::npos);

  const auto outputs = write_outputs(dir, "out.ndjson", outputs_for(test_instances(), "sys"));
  const auto reports = (dir.path() / "reports.ndjson").string();
  const auto a = run({"evaluate", "--mock-scorer", "0.6", "--instances", in, "--outputs", outputs,
                      "--system-id", "mine", "--json", "--out", reports});
  const auto b = run({"evaluate", "--mock-scorer", "0.6", "--instances", in, "--outputs", outputs,
                      "--system-id", "mine", "--json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = Json::parse(a.out);
  CHECK(j["systems"][0]["system_id"] == "mine");
  CHECK(j["systems"][0]["faithfulness"].get<double>() == doctest::Approx(0.6));
  CHECK(corpus::read_ndjson(reports).size() == 3);
}

TEST_CASE("cli: stats, encode/decode and coverage data") {
  TempDir dir("cli_data");
  SplitMix64 rng(21);
  std::vector<corpus::FiCInstance> instances;
  for (int i = 0; i < 8; ++i) instances.push_back(fusebench::testing::random_instance(rng, "ri" + std::to_string(i)));
  const auto in = save_fixture(dir, instances, corpus::Split::Train);

  const auto stats = run({"stats", "--in", in, "--split", "overall", "--json"});
  REQUIRE(stats.code == 0);
  CHECK(Json::parse(stats.out)["rows"].size() == 1);
  CHECK(Json::parse(stats.out)["rows"][0]["pair_count"] == 8);
  CHECK(run({"stats", "--in", in, "--split", "test"}).code == 1);

  const auto enc_path = (dir.path() / "enc.ndjson").string();
  REQUIRE(run({"encode", "--in", in, "--out", enc_path}).code == 0);
  const auto dec = run({"decode", "--in", enc_path});
  REQUIRE(dec.code == 0);
  const auto loaded = corpus::load_instances(in);
  std::string expected;
  for (const auto& inst : loaded) {
    const auto encoded = dataset::render_input(inst, dataset::EncodingMode::WithHighlights);
    const auto decoded = dataset::decode_markup(encoded.text);
    expected += Json{{"instance_id", inst.instance_id}, {"stripped", decoded.stripped},
                     {"spans", corpus::spans_to_json(decoded.spans)}}.dump() + "\n";
    CHECK(decoded.stripped == dataset::render_input(inst, dataset::EncodingMode::NoHighlights).text);
  }
  CHECK(dec.out == expected);

  const auto prompts = run({"encode", "--in", in, "--k-shot", "2", "--encoding", "only-highlights"});
  REQUIRE(prompts.code == 0);
  CHECK(Json::parse(prompts.out.substr(0, prompts.out.find('\n')))["prompt"].get<std::string>().find("### Example 2") != std::string::npos);

  const auto c1 = run({"gen-coverage-data", "--in", in, "--seed", "4"});
  const auto c2 = run({"gen-coverage-data", "--in", in, "--seed", "4"});
  REQUIRE(c1.code == 0);
  CHECK(c1.out == c2.out);
  CHECK_FALSE(c1.out.empty());
}

TEST_CASE("cli: ingest and build-dataset") {
  TempDir dir("cli_ingest");
  const Json raw = Json::array({
      {{"review_set_id", "hotel1"},
       {"reviews", {"Great pool. Clean rooms.", {{"id", "rB"}, {"text", "Staff was rude."}}}},
       {"summaries", {"Nice pool. Rude staff.", "Clean rooms."}},
       {"alignments",
        {{{"summary_index", 0}, {"summary_sentence_index", 0}, {"summary_spans", {{0, 10}}},
          {"review_id", "r0"}, {"highlight_spans", {{0, 11}}}, {"annotator_id", "w1"}}}}},
      {{"review_set_id", "hotel2"}, {"split", "test"}, {"reviews", {"Cafe\xCC\x81 was fine."}},
       {"summary", "The cafe\xCC\x81 was fine."}},
  });
  write_file_atomic(dir.path() / "raw.json", raw.dump());
  const auto out_dir = (dir.path() / "ingested").string();
  const auto r = run({"ingest", "--in", (dir.path() / "raw.json").string(), "--out", out_dir});
  REQUIRE(r.code == 0);
  const auto instances = corpus::load_instances(out_dir);
  REQUIRE(instances.size() == 3);
  std::size_t aligned = 0;
  for (const auto& inst : instances) {
    aligned += inst.alignments.size();
    if (inst.review_set.id == "hotel2") {
      CHECK(inst.split == corpus::Split::Test);
      CHECK(inst.review_set.reviews[0].text == "Caf\xC3\xA9 was fine.");
    } else {
      CHECK(inst.split == corpus::Split::Train);
      CHECK(inst.review_set.reviews[1].id == "rB");
    }
  }
  CHECK(aligned == 1);

  const auto rebuilt = (dir.path() / "rebuilt").string();
  REQUIRE(run({"build-dataset", "--in", out_dir, "--out", rebuilt, "--ratios", "0,0,1"}).code == 0);
  for (const auto& inst : corpus::load_instances(rebuilt)) CHECK(inst.split == corpus::Split::Test);
  CHECK(run({"build-dataset", "--in", out_dir, "--out", rebuilt, "--ratios", "1,2"}).code == 2);
}

TEST_CASE("cli: submit, leaderboard, meta-eval and agreement") {
  TempDir dir("cli_board");
  const auto in = save_fixture(dir, test_instances());
  const auto board_dir = (dir.path() / "board").string();
  const auto good = write_outputs(dir, "good.ndjson", outputs_for(test_instances(), "x"));
  auto partial_outputs = outputs_for(test_instances(), "x");
  partial_outputs.pop_back();
  const auto partial = write_outputs(dir, "partial.ndjson", partial_outputs);

  CHECK(run({"submit", "--in", in, "--outputs", good, "--system-id", "alpha", "--mock-scorer", "0.9",
             "--leaderboard", board_dir}).code == 0);
  CHECK(run({"submit", "--in", in, "--outputs", good, "--system-id", "beta", "--mock-scorer", "0.7",
             "--leaderboard", board_dir}).code == 0);
  const auto dup = run({"submit", "--in", in, "--outputs", good, "--system-id", "beta",
                        "--mock-scorer", "0.7", "--leaderboard", board_dir});
  CHECK(dup.code == 1);
  CHECK(Json::parse(dup.err)["code"] == "DuplicateSystemId");
  const auto incomplete = run({"submit", "--in", in, "--outputs", partial, "--system-id", "gamma",
                               "--mock-scorer", "0.7", "--leaderboard", board_dir});
  CHECK(Json::parse(incomplete.err)["code"] == "IncompleteCoverageOfInstances");
  const auto lb = run({"leaderboard", "--leaderboard", board_dir, "--json"});
  REQUIRE(lb.code == 0);
  const auto rows = Json::parse(lb.out)["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["system_id"] == "alpha");
  CHECK(rows[1]["system_id"] == "beta");

  Json metric = Json::array(), human = Json::array();
  for (int i = 0; i < 30; ++i) {
    const double h = (i * 7) % 11;
    metric.push_back({{"instance_id", "i" + std::to_string(i)}, {"system_id", "s"}, {"value", h + 0.1 * (i % 3)}});
    human.push_back({{"instance_id", "i" + std::to_string(i)}, {"system_id", "s"}, {"value", h}});
  }
  write_file_atomic(dir.path() / "m.json", metric.dump());
  write_file_atomic(dir.path() / "h.json", human.dump());
  const std::vector<std::string> meta_args = {
      "meta-eval", "--metric", "mine=" + (dir.path() / "m.json").string(), "--human",
      "faithfulness=" + (dir.path() / "h.json").string(), "--n-boot", "100", "--sample-size", "20",
      "--seed", "3", "--json"};
  const auto m1 = run(meta_args);
  const auto m2 = run(meta_args);
  REQUIRE(m1.code == 0);
  CHECK(m1.out == m2.out);
  CHECK(run({"meta-eval", "--metric", "broken", "--human", "x=y"}).code == 2);

  auto inst = test_instances()[0];
  const auto doc = inst.fused_text;
  inst.alignments.push_back(align_sentence(doc, 0, "r0", {{4, 8}}, "w2"));
  inst.alignments.push_back(align_sentence(doc, 1, "r1", {{0, 15}}, "w2"));
  inst.highlights = corpus::merge_highlights(inst.alignments, inst.review_set);
  TempDir agree_dir("cli_agree");
  const auto agree_in = save_fixture(agree_dir, {inst});
  const auto ag = run({"agreement", "--in", agree_in, "--a", "w1", "--b", "w2", "--json"});
  REQUIRE(ag.code == 0);
  // Sentence 0: {pool, great} vs {pool} -> 50; sentence 1 identical -> 100.
  CHECK(Json::parse(ag.out)["mean_iou"].get<double>() == doctest::Approx(75.0));
  CHECK(run({"agreement", "--in", agree_in, "--a", "w1", "--b", "nobody"}).code == 1);
}
