#include "fusebench/bench/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "fusebench/annotation/http_api.hpp"
#include "fusebench/annotation/service.hpp"
#include "fusebench/bench/leaderboard.hpp"
#include "fusebench/corpus/errors.hpp"
#include "fusebench/corpus/interchange.hpp"
#include "fusebench/dataset/assemble.hpp"
#include "fusebench/dataset/coverage_data.hpp"
#include "fusebench/dataset/encoding.hpp"
#include "fusebench/dataset/errors.hpp"
#include "fusebench/dataset/prompting.hpp"
#include "fusebench/dataset/splits.hpp"
#include "fusebench/dataset/statistics.hpp"
#include "fusebench/gateway/http_gateway.hpp"
#include "fusebench/gateway/mock.hpp"
#include "fusebench/metaeval/table.hpp"
#include "fusebench/metrics/agreement.hpp"
#include "fusebench/metrics/report.hpp"
#include "fusebench/util/journal.hpp"
#include "fusebench/util/rng.hpp"

namespace fusebench::bench {

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error("UsageError", message) {}
};

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : std::move(fallback);
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::string to_ndjson(const std::vector<Json>& rows) {
  std::string text;
  for (const auto& r : rows) text += r.dump() + '\n';
  return text;
}

// JSON records from a file (object, array, or one object per line) or a
// directory of such files in name order.
std::vector<Json> read_records(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path)) {
      const auto ext = e.path().extension().string();
      if (e.is_regular_file() && (ext == ".json" || ext == ".jsonl" || ext == ".ndjson")) {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<Json> out;
  for (const auto& file : files) {
    const auto ext = file.extension().string();
    if (ext == ".jsonl" || ext == ".ndjson") {
      for (auto& j : corpus::read_ndjson(file)) out.push_back(std::move(j));
      continue;
    }
    auto j = Json::parse(read_file(file), nullptr, false);
    if (j.is_discarded()) {
      throw corpus::CorpusError(corpus::CorpusErrc::MalformedDocument, file.string() + ": invalid JSON");
    }
    if (j.is_array()) {
      for (auto& item : j) out.push_back(std::move(item));
    } else {
      out.push_back(std::move(j));
    }
  }
  return out;
}

std::vector<corpus::FiCInstance> filter_split(std::vector<corpus::FiCInstance> instances,
                                              const std::string& split) {
  if (split.empty() || split == "overall" || split == "all") return instances;
  const auto wanted = corpus::parse_split(split);
  std::erase_if(instances, [&](const auto& inst) { return inst.split != wanted; });
  return instances;
}

std::optional<dataset::SplitRatios> parse_ratios(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("--ratios expects three comma-separated numbers");
    }
  }
  if (parts.size() != 3) throw UsageError("--ratios expects three comma-separated numbers");
  return dataset::SplitRatios{parts[0], parts[1], parts[2]};
}

struct ScorerOptions {
  std::optional<double> mock;
  std::string url;
  std::string config;
  std::string coverage_mode = "trained";
  std::string faithfulness_mode = "nli";

  void add_to(CLI::App* app) {
    app->add_option("--mock-scorer", mock, "Use the in-process mock scorer returning this probability");
    app->add_option("--scorer-url", url, "Scorer base URL (default: FUSEBENCH_SCORER_URL)");
    app->add_option("--scorer-config", config, "Scorer endpoint config JSON");
    app->add_option("--mode", coverage_mode, "Coverage scorer: trained or nli");
    app->add_option("--faithfulness-mode", faithfulness_mode, "Faithfulness scorer: nli or trained");
  }

  bool configured() const {
    return mock.has_value() || !config.empty() || !url.empty() ||
           std::getenv("FUSEBENCH_SCORER_URL") != nullptr;
  }

  std::unique_ptr<gateway::ScorerGateway> make() const {
    if (mock) return std::make_unique<gateway::MockGateway>(*mock, 4);
    if (!config.empty()) {
      return std::make_unique<gateway::HttpGateway>(gateway::load_endpoint_config(config));
    }
    const auto base = url.empty() ? env_or("FUSEBENCH_SCORER_URL", "") : url;
    if (base.empty()) {
      throw gateway::GatewayError(gateway::GatewayErrc::NotConfigured,
                                  "no scorer: pass --mock-scorer, --scorer-url or --scorer-config");
    }
    gateway::ScorerEndpointConfig cfg;
    cfg.base_url = base;
    return std::make_unique<gateway::HttpGateway>(cfg);
  }

  metrics::EvaluationConfig evaluation() const {
    metrics::EvaluationConfig cfg;
    cfg.coverage_mode = metrics::parse_coverage_mode(coverage_mode);
    if (faithfulness_mode == "nli") {
      cfg.faithfulness_mode = metrics::FaithfulnessMode::Nli;
    } else if (faithfulness_mode == "trained") {
      cfg.faithfulness_mode = metrics::FaithfulnessMode::Trained;
    } else {
      throw UsageError("--faithfulness-mode must be nli or trained");
    }
    return cfg;
  }
};

// ---- ingest ---------------------------------------------------------------

corpus::Document raw_document(const Json& j, const std::string& default_id) {
  if (j.is_string()) return corpus::Document::from_text(default_id, j.get<std::string>());
  return corpus::Document::from_text(j.value("id", default_id), j.at("text").get<std::string>());
}

struct IngestArgs {
  std::string in, out, ratios;
  std::uint64_t seed = 0;
};

int cmd_ingest(const IngestArgs& args, std::ostream& out, std::ostream& err) {
  dataset::AlignmentCorpus ac;
  dataset::SplitPlan plan;
  std::vector<std::string> unsplit;
  std::set<std::string> seen;
  for (const auto& rec : read_records(args.in)) {
    try {
      corpus::ReviewSet rs;
      const auto& reviews = rec.at("reviews");
      for (std::size_t i = 0; i < reviews.size(); ++i) {
        rs.reviews.push_back(raw_document(reviews[i], "r" + std::to_string(i)));
      }
      rs.origin = corpus::parse_origin(rec.value("origin", std::string("Other")));
      rs.id = rec.contains("review_set_id") ? rec.at("review_set_id").get<std::string>()
                                            : corpus::derive_review_set_id(rs);
      if (!seen.insert(rs.id).second) {
        throw corpus::CorpusError(corpus::CorpusErrc::DuplicateId, "review set '" + rs.id + "' repeated");
      }
      Json summaries = rec.contains("summaries") ? rec.at("summaries") : Json::array({rec.at("summary")});
      std::vector<std::string> summary_ids;
      for (std::size_t k = 0; k < summaries.size(); ++k) {
        auto doc = raw_document(summaries[k], rs.id + "-s" + std::to_string(k));
        summary_ids.push_back(doc.id);
        ac.summaries.push_back({rs.id, std::move(doc)});
      }
      for (const auto& a : rec.value("alignments", Json::array())) {
        std::string summary_id;
        if (a.contains("summary_id")) {
          summary_id = a.at("summary_id").get<std::string>();
        } else {
          const auto k = a.value("summary_index", std::size_t{0});
          if (k >= summary_ids.size()) {
            throw dataset::DatasetError(dataset::DatasetErrc::DanglingReference,
                                        "alignment names summary index " + std::to_string(k) +
                                            " of review set '" + rs.id + "'");
          }
          summary_id = summary_ids[k];
        }
        ac.alignments.push_back({rs.id, summary_id, corpus::alignment_from_json(a)});
      }
      if (rec.contains("split")) {
        plan[rs.id] = corpus::parse_split(rec.at("split").get<std::string>());
      } else {
        unsplit.push_back(rs.id);
      }
      ac.review_sets.push_back(std::move(rs));
    } catch (const Json::exception& e) {
      throw corpus::CorpusError(corpus::CorpusErrc::MalformedDocument, e.what());
    }
  }
  if (!unsplit.empty()) {
    const auto ratios = parse_ratios(args.ratios).value_or(dataset::SplitRatios{});
    for (const auto& [id, split] : dataset::assign_splits(unsplit, ratios, args.seed)) plan[id] = split;
  }
  const auto result = dataset::assemble_instances(ac, plan);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  corpus::save_instances(args.out, result.instances);
  out << "wrote " << result.instances.size() << " instances to " << args.out << '\n';
  return 0;
}

// ---- build-dataset --------------------------------------------------------

struct BuildArgs {
  std::string in, out, annotations, ratios;
  std::uint64_t seed = 0;
};

int cmd_build_dataset(const BuildArgs& args, std::ostream& out, std::ostream& err) {
  const auto instances = corpus::load_instances(args.in);
  auto ac = dataset::corpus_from_instances(instances);
  if (!args.annotations.empty()) {
    annotation::AnnotationService svc(annotation::Catalog::from_instances(instances, false),
                                      {args.annotations, 3, 0});
    ac.alignments.clear();
    for (const auto& s : svc.sessions()) {
      if (s.training || s.status == annotation::SessionStatus::Open) continue;
      for (const auto& a : s.saved_alignments) {
        ac.alignments.push_back({s.review_set_id, s.summary_id, a});
      }
    }
  }
  dataset::SplitPlan plan;
  if (const auto ratios = parse_ratios(args.ratios)) {
    std::vector<std::string> ids;
    for (const auto& rs : ac.review_sets) ids.push_back(rs.id);
    plan = dataset::assign_splits(ids, *ratios, args.seed);
  } else {
    for (const auto& inst : instances) plan[inst.review_set.id] = inst.split;
  }
  const auto result = dataset::assemble_instances(ac, plan);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  corpus::save_instances(args.out, result.instances);
  out << "wrote " << result.instances.size() << " instances to " << args.out << '\n';
  return 0;
}

// ---- stats ----------------------------------------------------------------

struct StatsArgs {
  std::string in, split;
  bool json = false;
};

int cmd_stats(const StatsArgs& args, std::ostream& out) {
  const auto table = dataset::compute_statistics(corpus::load_instances(args.in));
  std::optional<std::string> only;
  if (!args.split.empty()) {
    if (table.find(args.split) == nullptr) {
      throw dataset::DatasetError(dataset::DatasetErrc::EmptyInput,
                                  "no instances in split '" + args.split + "'");
    }
    only = args.split;
  }
  if (args.json) {
    auto j = dataset::to_json(table);
    if (only) {
      Json rows = Json::array();
      for (const auto& r : j["rows"]) {
        if (r["split"] == *only) rows.push_back(r);
      }
      j["rows"] = rows;
    }
    out << j.dump(2) << '\n';
  } else {
    out << dataset::render_text(table, only);
  }
  return 0;
}

// ---- gen-coverage-data ----------------------------------------------------

struct CoverageArgs {
  std::string in, out, split;
  std::uint64_t seed = 0;
};

int cmd_gen_coverage(const CoverageArgs& args, std::ostream& out, std::ostream& err) {
  const auto instances = filter_split(corpus::load_instances(args.in), args.split);
  std::vector<Json> rows;
  for (const auto& inst : instances) {
    try {
      const auto data = dataset::generate_coverage_training_data(
          inst, mix64(args.seed ^ stable_hash(inst.instance_id)));
      for (const auto& w : data.warnings) err << "warning: " << w << '\n';
      for (const auto& sample : data.samples) {
        auto j = dataset::to_json(sample);
        j["instance_id"] = sample.instance_id;
        rows.push_back(std::move(j));
      }
    } catch (const dataset::DatasetError& e) {
      if (e.errc() != dataset::DatasetErrc::TooFewSentences &&
          e.errc() != dataset::DatasetErrc::NoAlignments) {
        throw;
      }
      err << "warning: skipped " << inst.instance_id << ": " << e.what() << '\n';
    }
  }
  write_output(args.out, to_ndjson(rows), out);
  return 0;
}

// ---- encode / decode ------------------------------------------------------

struct EncodeArgs {
  std::string in, out, split, mode = "with-highlights";
  std::size_t k_shot = 0;
};

int cmd_encode(const EncodeArgs& args, std::ostream& out) {
  const auto mode = dataset::parse_encoding_mode(args.mode);
  const auto all = corpus::load_instances(args.in);
  const auto targets = filter_split(all, args.split);
  std::vector<dataset::Exemplar> exemplars;
  if (args.k_shot > 0) {
    for (const auto& inst : all) {
      if (inst.split != corpus::Split::Train) continue;
      exemplars.push_back({dataset::render_input(inst, mode), inst.fused_text.text});
    }
  }
  std::vector<Json> rows;
  for (const auto& inst : targets) {
    const auto encoded = dataset::render_input(inst, mode);
    Json row = {{"instance_id", inst.instance_id},
                {"mode", dataset::to_string(mode)},
                {"input", encoded.text},
                {"target", inst.fused_text.text}};
    if (args.k_shot > 0) {
      std::vector<dataset::Exemplar> pool;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].split == corpus::Split::Train && all[i].instance_id != inst.instance_id) {
          pool.push_back({dataset::render_input(all[i], mode), all[i].fused_text.text});
        }
        if (pool.size() == args.k_shot) break;
      }
      row["prompt"] = dataset::build_kshot_prompt(pool, encoded, args.k_shot);
    }
    rows.push_back(std::move(row));
  }
  write_output(args.out, to_ndjson(rows), out);
  return 0;
}

struct DecodeArgs {
  std::string in, out;
};

int cmd_decode(const DecodeArgs& args, std::ostream& out) {
  std::vector<Json> rows;
  for (const auto& rec : corpus::read_ndjson(args.in)) {
    const auto text = rec.contains("input") ? rec.at("input") : rec.at("text");
    const auto decoded = dataset::decode_markup(text.get<std::string>());
    rows.push_back({{"instance_id", rec.value("instance_id", std::string{})},
                    {"stripped", decoded.stripped},
                    {"spans", corpus::spans_to_json(decoded.spans)}});
  }
  write_output(args.out, to_ndjson(rows), out);
  return 0;
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateArgs {
  std::string instances, outputs, system_id = "system", out, split;
  bool json = false;
  ScorerOptions scorer;
};

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  const auto instances = filter_split(corpus::load_instances(args.instances), args.split);
  std::map<std::string, const corpus::FiCInstance*> by_id;
  for (const auto& inst : instances) by_id[inst.instance_id] = &inst;

  std::vector<corpus::SystemOutput> outputs;
  if (args.outputs.empty()) {
    for (const auto& inst : instances) {
      outputs.push_back(corpus::SystemOutput::from_passage(inst.instance_id, "reference",
                                                           inst.fused_text.text));
    }
  } else {
    outputs = corpus::load_system_outputs(args.outputs, args.system_id);
  }
  const auto scorer = args.scorer.make();
  const auto config = args.scorer.evaluation();
  std::vector<metrics::ScoreReport> reports;
  for (const auto& o : outputs) {
    const auto it = by_id.find(o.instance_id);
    if (it == by_id.end()) {
      throw BenchError(BenchErrc::UnknownInstance, "output for unknown instance '" + o.instance_id + "'");
    }
    reports.push_back(metrics::evaluate_output(*it->second, o, *scorer, config));
  }
  const auto systems = metrics::summarize_by_system(reports);
  if (!args.out.empty()) {
    std::vector<Json> rows;
    for (const auto& r : reports) rows.push_back(metrics::to_json(r));
    write_file_atomic(args.out, to_ndjson(rows));
  }
  if (args.json) {
    Json s = Json::array();
    for (const auto& sys : systems) s.push_back(metrics::to_json(sys));
    out << Json{{"systems", s}}.dump(2) << '\n';
  } else {
    out << metrics::render_results_table(systems);
  }
  return 0;
}

// ---- meta-eval ------------------------------------------------------------

std::vector<metaeval::NamedSeries> named_series(const std::vector<std::string>& specs,
                                                const char* flag) {
  std::vector<metaeval::NamedSeries> out;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError(std::string(flag) + " expects name=path, got '" + spec + "'");
    }
    Json entries = Json::array();
    for (auto& r : read_records(spec.substr(eq + 1))) entries.push_back(std::move(r));
    out.push_back({spec.substr(0, eq), metaeval::parse_score_entries(entries)});
  }
  return out;
}

struct MetaEvalArgs {
  std::vector<std::string> metric_specs, human_specs;
  metaeval::BootstrapConfig config;
  std::string method = "kendall_tau_b";
  bool json = false;
};

int cmd_meta_eval(MetaEvalArgs args, std::ostream& out) {
  args.config.method = metaeval::parse_method(args.method);
  const auto metric = named_series(args.metric_specs, "--metric");
  const auto human = named_series(args.human_specs, "--human");
  const auto table = metaeval::correlation_table(metric, human, args.config);
  if (args.json) {
    out << metaeval::to_json(table).dump(2) << '\n';
  } else {
    out << metaeval::render_text(table);
  }
  return 0;
}

// ---- agreement ------------------------------------------------------------

struct AgreementArgs {
  std::string in, a, b;
  bool pooled = false;
  bool json = false;
};

int cmd_agreement(const AgreementArgs& args, std::ostream& out) {
  const auto instances = corpus::load_instances(args.in);
  const auto agg = args.pooled ? metrics::IouAggregation::Pooled : metrics::IouAggregation::SentenceMean;
  Json per_instance = Json::array();
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& inst : instances) {
    std::vector<corpus::Alignment> a, b;
    for (const auto& al : inst.alignments) {
      if (al.annotator_id == args.a) a.push_back(al);
      if (al.annotator_id == args.b) b.push_back(al);
    }
    if (a.empty() || b.empty()) continue;
    const auto r = metrics::iou_agreement(a, b, inst, agg);
    per_instance.push_back({{"instance_id", inst.instance_id}, {"iou", r.overall}});
    sum += r.overall;
    ++n;
  }
  if (n == 0) {
    throw metrics::MetricsError(metrics::MetricsErrc::InvalidArgument,
                                "no instance has alignments from both '" + args.a + "' and '" +
                                    args.b + "'");
  }
  const double mean = sum / static_cast<double>(n);
  if (args.json) {
    out << Json{{"annotator_a", args.a}, {"annotator_b", args.b}, {"instances", n},
                {"mean_iou", mean}, {"per_instance", per_instance}}
               .dump(2)
        << '\n';
  } else {
    char line[128];
    std::snprintf(line, sizeof line, "IoU %s vs %s: %.1f over %zu instances\n", args.a.c_str(),
                  args.b.c_str(), metrics::round1(mean), n);
    out << line;
  }
  return 0;
}

// ---- serve / submit / leaderboard -----------------------------------------

struct ServeArgs {
  std::string data_dir, bind, instances, training, ui;
  ScorerOptions scorer;
};

int cmd_serve(const ServeArgs& args, std::ostream& out) {
  const auto data_dir = args.data_dir.empty() ? env_or("FUSEBENCH_DATA_DIR", "fusebench-data") : args.data_dir;
  const auto bind = args.bind.empty() ? env_or("FUSEBENCH_BIND", "127.0.0.1:8080") : args.bind;
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw UsageError("bind address must be host:port");
  const auto host = bind.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("bind address must be host:port");
  }

  std::vector<corpus::FiCInstance> production;
  annotation::Catalog catalog;
  if (!args.instances.empty()) {
    production = corpus::load_instances(args.instances);
    catalog.merge(annotation::Catalog::from_instances(production, false));
  }
  if (!args.training.empty()) {
    catalog.merge(annotation::Catalog::from_instances(corpus::load_instances(args.training), true));
  }
  annotation::AnnotationService service(std::move(catalog), {data_dir, 3, 1000});
  Leaderboard board(data_dir);
  const auto test = filter_split(production, "test");
  std::unique_ptr<gateway::ScorerGateway> scorer;
  if (args.scorer.configured()) scorer = args.scorer.make();

  httplib::Server server;
  annotation::register_annotation_routes(server, service);
  LeaderboardContext ctx;
  ctx.leaderboard = &board;
  ctx.test = &test;
  ctx.scorer = scorer.get();
  ctx.config = args.scorer.evaluation();
  ctx.judgments = [&service] { return service.judgments(); };
  register_leaderboard_routes(server, ctx);
  if (!args.ui.empty() && !server.set_mount_point("/", args.ui)) {
    throw UsageError("UI directory '" + args.ui + "' does not exist");
  }
  out << "serving on " << host << ':' << port << " (data: " << data_dir << ")" << std::endl;
  if (!server.listen(host, port)) {
    throw Error("BindFailed", "could not listen on " + bind);
  }
  return 0;
}

struct SubmitArgs {
  std::string instances, outputs, system_id, leaderboard;
  bool replace = false;
  ScorerOptions scorer;
};

std::string leaderboard_dir(const std::string& flag) {
  return flag.empty() ? env_or("FUSEBENCH_DATA_DIR", "fusebench-data") : flag;
}

int cmd_submit(const SubmitArgs& args, std::ostream& out) {
  const auto test = filter_split(corpus::load_instances(args.instances), "test");
  auto outputs = corpus::load_system_outputs(args.outputs, args.system_id);
  const auto scorer = args.scorer.make();
  Leaderboard board(leaderboard_dir(args.leaderboard));
  const auto s = board.submit(test, std::move(outputs), args.system_id, *scorer,
                              args.scorer.evaluation(), args.replace);
  char line[256];
  std::snprintf(line, sizeof line, "%s: faithfulness %.1f coverage %.1f F-1 %.1f over %zu instances\n",
                s.system_id.c_str(), metrics::round1(s.faithfulness), metrics::round1(s.coverage),
                metrics::round1(s.f1), s.instances);
  out << line;
  return 0;
}

struct LeaderboardArgs {
  std::string leaderboard;
  bool json = false;
};

int cmd_leaderboard(const LeaderboardArgs& args, std::ostream& out) {
  const Leaderboard board(leaderboard_dir(args.leaderboard));
  const auto table = board.table();
  if (args.json) {
    out << to_json(table).dump(2) << '\n';
  } else {
    out << render_text(table);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fusion-in-Context benchmark workbench", "fusebench"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Raw review/summary JSON to interchange instances");
  c_ingest->add_option("--in", ingest.in, "Raw JSON file or directory")->required();
  c_ingest->add_option("--out", ingest.out, "Output directory")->required();
  c_ingest->add_option("--ratios", ingest.ratios, "train,dev,test ratios for records without a split");
  c_ingest->add_option("--seed", ingest.seed, "Split seed");

  BuildArgs build;
  auto* c_build = app.add_subcommand("build-dataset", "Assemble instances from alignments and split them");
  c_build->add_option("--in", build.in, "Instances (catalogue and alignments)")->required();
  c_build->add_option("--out", build.out, "Output directory")->required();
  c_build->add_option("--annotations", build.annotations, "Annotation data directory to take alignments from");
  c_build->add_option("--ratios", build.ratios, "train,dev,test ratios; default keeps existing splits");
  c_build->add_option("--seed", build.seed, "Split seed");

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "Dataset statistics table");
  c_stats->add_option("--in", stats.in, "Instances")->required();
  c_stats->add_option("--split", stats.split, "Only this row: train, dev, test or overall");
  c_stats->add_flag("--json", stats.json, "JSON output");

  CoverageArgs coverage;
  auto* c_cov = app.add_subcommand("gen-coverage-data", "Coverage classifier training pairs");
  c_cov->add_option("--in", coverage.in, "Instances")->required();
  c_cov->add_option("--out", coverage.out, "Output NDJSON (default stdout)");
  c_cov->add_option("--split", coverage.split, "Restrict to a split");
  c_cov->add_option("--seed", coverage.seed, "Seed");

  EncodeArgs encode;
  auto* c_encode = app.add_subcommand("encode", "Render model inputs");
  c_encode->add_option("--in", encode.in, "Instances")->required();
  c_encode->add_option("--out", encode.out, "Output NDJSON (default stdout)");
  c_encode->add_option("--split", encode.split, "Restrict to a split");
  c_encode->add_option("--encoding", encode.mode, "with-highlights, only-highlights or no-highlights");
  c_encode->add_option("--k-shot", encode.k_shot, "Add a prompt with this many train exemplars");

  DecodeArgs decode;
  auto* c_decode = app.add_subcommand("decode", "Strip highlight markers and recover spans");
  c_decode->add_option("--in", decode.in, "Encoded NDJSON")->required();
  c_decode->add_option("--out", decode.out, "Output NDJSON (default stdout)");

  EvaluateArgs evaluate;
  auto* c_eval = app.add_subcommand("evaluate", "Score system outputs");
  c_eval->add_option("--instances,--in", evaluate.instances, "Instances")->required();
  c_eval->add_option("--outputs", evaluate.outputs, "System outputs NDJSON; default scores the references");
  c_eval->add_option("--system-id", evaluate.system_id, "System id for outputs without one");
  c_eval->add_option("--split", evaluate.split, "Restrict to a split");
  c_eval->add_option("--out", evaluate.out, "Write per-instance reports as NDJSON");
  c_eval->add_flag("--json", evaluate.json, "JSON output");
  evaluate.scorer.add_to(c_eval);

  MetaEvalArgs meta;
  auto* c_meta = app.add_subcommand("meta-eval", "Bootstrap metric-human correlations");
  c_meta->add_option("--metric", meta.metric_specs, "name=path of metric scores")->required();
  c_meta->add_option("--human", meta.human_specs, "axis=path of human scores")->required();
  c_meta->add_option("--method", meta.method, "kendall_tau_b, kendall_tau_a or spearman");
  c_meta->add_option("--n-boot", meta.config.n_boot, "Resamples");
  c_meta->add_option("--sample-size", meta.config.sample_size, "Items per resample");
  c_meta->add_option("--confidence", meta.config.confidence, "Interval level");
  c_meta->add_option("--seed", meta.config.seed, "Seed");
  c_meta->add_option("--threads", meta.config.threads, "Worker threads (0: all cores)");
  c_meta->add_flag("--json", meta.json, "JSON output");

  AgreementArgs agreement;
  auto* c_agree = app.add_subcommand("agreement", "IoU between two annotators");
  c_agree->add_option("--in", agreement.in, "Instances")->required();
  c_agree->add_option("--a", agreement.a, "First annotator id")->required();
  c_agree->add_option("--b", agreement.b, "Second annotator id")->required();
  c_agree->add_flag("--pooled", agreement.pooled, "Pool tokens instead of averaging sentences");
  c_agree->add_flag("--json", agreement.json, "JSON output");

  ServeArgs serve;
  auto* c_serve = app.add_subcommand("serve", "Annotation service, UI assets and leaderboard API");
  c_serve->add_option("--data-dir", serve.data_dir, "Store directory (default: FUSEBENCH_DATA_DIR)");
  c_serve->add_option("--bind", serve.bind, "host:port (default: FUSEBENCH_BIND or 127.0.0.1:8080)");
  c_serve->add_option("--instances", serve.instances, "Production pairs; test split feeds the leaderboard");
  c_serve->add_option("--training", serve.training, "Training pairs");
  c_serve->add_option("--ui", serve.ui, "Static UI directory");
  serve.scorer.add_to(c_serve);

  SubmitArgs submit;
  auto* c_submit = app.add_subcommand("submit", "Score a submission and add it to the leaderboard");
  c_submit->add_option("--instances,--in", submit.instances, "Instances")->required();
  c_submit->add_option("--outputs", submit.outputs, "Outputs NDJSON {instance_id, passage}")->required();
  c_submit->add_option("--system-id", submit.system_id, "System id")->required();
  c_submit->add_option("--leaderboard", submit.leaderboard, "Leaderboard directory (default: FUSEBENCH_DATA_DIR)");
  c_submit->add_flag("--replace", submit.replace, "Replace an existing entry");
  submit.scorer.add_to(c_submit);

  LeaderboardArgs board;
  auto* c_board = app.add_subcommand("leaderboard", "Show the leaderboard");
  c_board->add_option("--leaderboard", board.leaderboard, "Leaderboard directory (default: FUSEBENCH_DATA_DIR)");
  c_board->add_flag("--json", board.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (c_ingest->parsed()) return cmd_ingest(ingest, out, err);
    if (c_build->parsed()) return cmd_build_dataset(build, out, err);
    if (c_stats->parsed()) return cmd_stats(stats, out);
    if (c_cov->parsed()) return cmd_gen_coverage(coverage, out, err);
    if (c_encode->parsed()) return cmd_encode(encode, out);
    if (c_decode->parsed()) return cmd_decode(decode, out);
    if (c_eval->parsed()) return cmd_evaluate(evaluate, out);
    if (c_meta->parsed()) return cmd_meta_eval(meta, out);
    if (c_agree->parsed()) return cmd_agreement(agreement, out);
    if (c_serve->parsed()) return cmd_serve(serve, out);
    if (c_submit->parsed()) return cmd_submit(submit, out);
    if (c_board->parsed()) return cmd_leaderboard(board, out);
  } catch (const UsageError& e) {
    err << structured_error_line(e.code(), e.what()) << '\n';
    return 2;
  } catch (const Error& e) {
    err << structured_error_line(e.code(), e.what()) << '\n';
    return 1;
  } catch (const Json::exception& e) {
    err << structured_error_line("MalformedInput", e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << structured_error_line("Failure", e.what()) << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace fusebench::bench
