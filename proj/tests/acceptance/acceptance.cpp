// Acceptance suite: one PASS/FAIL line per criterion, each with its
// runtime budget. Exit status is non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fusebench/annotation/qualification.hpp"
#include "fusebench/annotation/service.hpp"
#include "fusebench/bench/leaderboard.hpp"
#include "fusebench/corpus/interchange.hpp"
#include "fusebench/corpus/text.hpp"
#include "fusebench/dataset/coverage_data.hpp"
#include "fusebench/dataset/encoding.hpp"
#include "fusebench/dataset/statistics.hpp"
#include "fusebench/gateway/mock.hpp"
#include "fusebench/metaeval/bootstrap.hpp"
#include "fusebench/metaeval/correlation.hpp"
#include "fusebench/metrics/agreement.hpp"
#include "fusebench/metrics/lexical.hpp"
#include "fusebench/metrics/report.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fusebench;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void check(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

int g_failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "runtime %.2f s exceeds %.0f s", secs, budget_s);
    o.fail(buf);
  }
  std::printf("%s  %-26s %7.2f s (budget %3.0f s)  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(),
              secs, budget_s, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ---- F-1 arithmetic -------------------------------------------------------

Outcome f1_rows() {
  Outcome o;
  const struct { double f, c, f1; } rows[] = {
      {72.8, 86.4, 79.0}, {54.0, 82.0, 65.1}, {84.6, 87.8, 86.2}, {53.7, 76.9, 63.2}, {81.6, 85.6, 83.6}};
  for (const auto& r : rows) {
    const double got = metrics::harmonic_f1(r.f, r.c);
    o.check(got == r.f1, fmt("(%.1f, %.1f) gave %.4f", r.f, r.c, got));
  }
  if (o.pass) o.detail = "5/5 rows exact";
  return o;
}

// ---- correlation oracles --------------------------------------------------

Outcome correlation_oracles() {
  Outcome o;
  double worst = 0.0;
  std::size_t cases = 0;
  auto compare = [&](const std::vector<double>& x, const std::vector<double>& y) {
    const double tb = metaeval::kendall_tau_b(x, y);
    const double sr = metaeval::spearman_rho(x, y);
    const double e = std::max(std::abs(tb - oracle::tau_b(x, y)), std::abs(sr - oracle::spearman(x, y)));
    worst = std::max(worst, e);
    ++cases;
  };
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<double> x(n);
    std::iota(x.begin(), x.end(), 0.0);
    auto y = x;
    do {
      compare(x, y);
    } while (std::next_permutation(y.begin(), y.end()));
  }
  SplitMix64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(11);
    const std::size_t levels = 2 + rng.below(4);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.below(levels));
      y[i] = static_cast<double>(rng.below(levels));
    }
    compare(x, y);
  }
  o.check(worst <= 1e-9, fmt("max |error| %.3g", worst));
  if (o.pass) o.detail = std::to_string(cases) + " cases, max |error| " + fmt("%.2g", worst);
  return o;
}

// ---- bootstrap protocol ---------------------------------------------------

metaeval::PairedSeries linear_noise(std::uint64_t seed, std::size_t n, double noise) {
  SplitMix64 rng(seed);
  metaeval::PairedSeries s;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.unit();
    double e = 0.0;
    for (int k = 0; k < 4; ++k) e += rng.unit() - 0.5;
    s.metric_values.push_back(x);
    s.human_values.push_back(x + noise * e);
  }
  return s;
}

Outcome bootstrap_protocol() {
  Outcome o;
  const metaeval::BootstrapConfig defaults;
  o.check(defaults.n_boot == 1000 && defaults.sample_size == 70 && defaults.confidence == 0.95,
          "defaults differ from 1000 x 70 at 95%");

  const auto series = linear_noise(1, 100, 0.2);
  auto cfg = defaults;
  cfg.seed = 17;
  const auto r1 = metaeval::bootstrap_correlation(series, cfg);
  const auto r2 = metaeval::bootstrap_correlation(series, cfg);
  o.check(r1 == r2, "same seed gave different results");
  o.check(std::abs(r1.bootstrap_mean - r1.point_estimate) <= 0.1, "bootstrap mean far from point estimate");

  metaeval::PairedSeries identity;
  for (int i = 0; i < 100; ++i) {
    identity.metric_values.push_back(i);
    identity.human_values.push_back(i);
  }
  const auto ri = metaeval::bootstrap_correlation(identity, cfg);
  o.check(ri.ci_low == 1.0 && ri.ci_high == 1.0 && ri.bootstrap_mean == 1.0, "y = x CI is not [1, 1]");

  int covered = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = linear_noise(1000 + seed, 100, 0.3);
    auto c = defaults;
    c.seed = seed;
    const auto r = metaeval::bootstrap_correlation(s, c);
    if (r.ci_low <= r.point_estimate && r.point_estimate <= r.ci_high) ++covered;
  }
  o.check(covered >= 45, "coverage " + std::to_string(covered) + "/50");
  if (o.pass) {
    o.detail = "deterministic; y=x CI [1.0, 1.0]; coverage " + std::to_string(covered) + "/50";
  }
  return o;
}

// ---- lexical oracles ------------------------------------------------------

std::vector<std::vector<std::string>> ngrams(const std::vector<std::string>& t, std::size_t n) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i + n <= t.size(); ++i) out.emplace_back(t.begin() + i, t.begin() + i + n);
  return out;
}

double f_of(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

struct Prf {
  double p, r, f;
};

Prf rouge_n_oracle(const std::vector<std::string>& ref, const std::vector<std::string>& cand, std::size_t n) {
  const auto rg = ngrams(ref, n);
  const auto cg = ngrams(cand, n);
  std::vector<bool> used(rg.size(), false);
  double overlap = 0;
  for (const auto& g : cg) {
    for (std::size_t j = 0; j < rg.size(); ++j) {
      if (!used[j] && rg[j] == g) {
        used[j] = true;
        ++overlap;
        break;
      }
    }
  }
  const double p = cg.empty() ? 0.0 : overlap / cg.size();
  const double r = rg.empty() ? 0.0 : overlap / rg.size();
  return {p, r, f_of(p, r)};
}

bool is_subsequence(const std::vector<std::string>& sub, const std::vector<std::string>& of) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < of.size() && j < sub.size(); ++i) {
    if (of[i] == sub[j]) ++j;
  }
  return j == sub.size();
}

Prf rouge_l_oracle(const std::vector<std::string>& ref, const std::vector<std::string>& cand) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << cand.size()); ++mask) {
    std::vector<std::string> sub;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(cand[i]);
    }
    if (sub.size() > best && is_subsequence(sub, ref)) best = sub.size();
  }
  const double p = cand.empty() ? 0.0 : static_cast<double>(best) / cand.size();
  const double r = ref.empty() ? 0.0 : static_cast<double>(best) / ref.size();
  return {p, r, f_of(p, r)};
}

bool same(const metrics::MetricScore& s, const Prf& want) {
  auto eq = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  return eq(*s.precision, want.p) && eq(*s.recall, want.r) && eq(*s.f1, want.f);
}

Outcome lexical_oracles() {
  Outcome o;
  const std::vector<std::string> vocab = {"pool", "room", "clean", "staff", "great"};
  SplitMix64 rng(99);
  for (int t = 0; t < 500 && o.pass; ++t) {
    std::vector<std::string> ref(rng.below(9)), cand(rng.below(9));
    for (auto& w : ref) w = vocab[rng.below(vocab.size())];
    for (auto& w : cand) w = vocab[rng.below(vocab.size())];
    for (std::size_t n = 1; n <= 2; ++n) {
      o.check(same(metrics::rouge_n(ref, cand, n), rouge_n_oracle(ref, cand, n)),
              "rouge-" + std::to_string(n) + " mismatch on list " + std::to_string(t));
    }
    o.check(same(metrics::rouge_l(ref, cand), rouge_l_oracle(ref, cand)),
            "rouge-L mismatch on list " + std::to_string(t));
  }

  auto toks = [](const std::string& s) { return metrics::lexical_tokens(s); };
  auto fmean = [](double p, double r) { return 10 * p * r / (r + 9 * p); };
  const struct { const char* ref; const char* cand; double want; } fixtures[] = {
      // 6 matches, 1 chunk.
      {"the cat sat on the mat", "the cat sat on the mat", 1.0 - 0.5 / 216.0},
      // 3 matches, chunks [sat] [the cat].
      {"the cat sat", "sat the cat", 1.0 - 0.5 * 8.0 / 27.0},
      // Stem matches cat~cats, runs~running; P 2/3, R 1/2, 2 chunks.
      {"the cats were running", "a cat runs", fmean(2.0 / 3, 0.5) * 0.5},
      {"good food", "bad service", 0.0},
      // room, clean matched; P 1, R 2/5, 2 chunks.
      {"the room was very clean", "room clean", fmean(1.0, 0.4) * 0.5},
  };
  int k = 0;
  for (const auto& f : fixtures) {
    ++k;
    const double got = metrics::meteor_lite(toks(f.ref), toks(f.cand)).value;
    o.check(std::abs(got - f.want) <= 1e-12, fmt("meteor fixture %.0f: got %.6f want %.6f", k, got, f.want));
  }
  if (o.pass) o.detail = "500 lists x ROUGE-1/2/L exact; 5/5 meteor fixtures";
  return o;
}

// ---- IoU ------------------------------------------------------------------

std::vector<corpus::Alignment> random_alignments(SplitMix64& rng, const corpus::FiCInstance& inst,
                                                 const std::string& who) {
  std::vector<corpus::Alignment> out;
  const std::size_t n = rng.below(5);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& review = inst.review_set.reviews[rng.below(inst.review_set.reviews.size())];
    auto spans = testing::random_token_spans(rng, review, 3);
    if (spans.empty()) continue;
    out.push_back(testing::align_sentence(inst.fused_text, rng.below(inst.fused_text.sentences.size()),
                                          review.id, std::move(spans), who));
  }
  return out;
}

double iou_oracle(const std::vector<corpus::Alignment>& a, const std::vector<corpus::Alignment>& b,
                  const corpus::FiCInstance& inst) {
  auto keys = [&](const std::vector<corpus::Alignment>& side, std::size_t s) {
    std::set<std::pair<std::string, std::size_t>> out;
    for (const auto& al : side) {
      if (al.summary_sentence_index != s) continue;
      const auto& review = *inst.review_set.find(al.highlight.review_id);
      for (std::size_t t = 0; t < review.tokens.size(); ++t) {
        const auto& tok = review.tokens[t];
        if (!tok.is_content_word) continue;
        for (const auto& sp : al.highlight.spans) {
          if (tok.span.start < sp.end && sp.start < tok.span.end) out.insert({review.id, t});
        }
      }
    }
    return out;
  };
  double sum = 0;
  int counted = 0;
  for (std::size_t s = 0; s < inst.fused_text.sentences.size(); ++s) {
    auto targets = [s](const auto& side) {
      return std::any_of(side.begin(), side.end(), [s](const auto& x) { return x.summary_sentence_index == s; });
    };
    if (!targets(a) && !targets(b)) continue;
    const auto ka = keys(a, s);
    const auto kb = keys(b, s);
    std::set<std::pair<std::string, std::size_t>> uni = ka, inter;
    uni.insert(kb.begin(), kb.end());
    for (const auto& k : ka) {
      if (kb.count(k)) inter.insert(k);
    }
    sum += uni.empty() ? 1.0 : static_cast<double>(inter.size()) / uni.size();
    ++counted;
  }
  return counted == 0 ? 100.0 : 100.0 * sum / counted;
}

Outcome iou_suite() {
  Outcome o;
  SplitMix64 rng(404);
  for (int t = 0; t < 100 && o.pass; ++t) {
    const auto inst = testing::random_instance(rng, "iou" + std::to_string(t));
    const auto a = random_alignments(rng, inst, "a");
    const auto b = random_alignments(rng, inst, "b");
    const double ab = metrics::iou_agreement(a, b, inst).overall;
    const double ba = metrics::iou_agreement(b, a, inst).overall;
    o.check(ab == ba, "asymmetric on fixture " + std::to_string(t));
    o.check(std::abs(ab - iou_oracle(a, b, inst)) <= 1e-9, "oracle mismatch on fixture " + std::to_string(t));
  }
  auto rs = testing::make_review_set("rs", {"The pool was great and the rooms were clean."});
  const auto sum = corpus::Document::from_text("s", "Great pool.");
  const auto inst = testing::make_instance("triv", rs, sum.text, {});
  const std::vector<corpus::Alignment> pool = {testing::align_sentence(sum, 0, "r0", {{4, 8}})};
  const std::vector<corpus::Alignment> rooms = {testing::align_sentence(sum, 0, "r0", {{31, 36}})};
  o.check(metrics::iou_agreement(pool, pool, inst).overall == 100.0, "identical sets are not 100.0");
  o.check(metrics::iou_agreement(pool, rooms, inst).overall == 0.0, "disjoint sets are not 0.0");
  if (o.pass) o.detail = "100 fixtures symmetric and oracle-exact; trivial 100.0/0.0";
  return o;
}

// ---- coverage data --------------------------------------------------------

Outcome coverage_data() {
  Outcome o;
  SplitMix64 rng(55);
  std::size_t samples = 0, violations = 0, instances = 0;
  while (instances < 50) {
    const auto inst = testing::random_instance(rng, "cov" + std::to_string(instances));
    if (inst.alignments.empty()) continue;
    ++instances;
    const auto data = dataset::generate_coverage_training_data(inst, instances);
    for (const auto& s : data.samples) {
      ++samples;
      const auto& h = inst.highlights[s.highlight_index];
      std::set<std::size_t> aligned;
      for (const auto& a : inst.alignments) {
        if (a.highlight.review_id != h.review_id) continue;
        for (const auto& x : a.highlight.spans) {
          for (const auto& y : h.spans) {
            if (x.start < y.end && y.start < x.end) aligned.insert(a.summary_sentence_index);
          }
        }
      }
      const std::set<std::size_t> removed(s.removed_sentences.begin(), s.removed_sentences.end());
      bool ok = s.modified_summary != inst.fused_text.text;
      if (s.label == dataset::CoverageLabel::No) {
        ok = ok && removed == aligned;
      } else {
        ok = ok && removed.size() == 1 && aligned.count(*removed.begin()) == 0;
      }
      std::string rebuilt;
      for (std::size_t i = 0; i < inst.fused_text.sentences.size(); ++i) {
        if (removed.count(i)) continue;
        if (!rebuilt.empty()) rebuilt += ' ';
        rebuilt += std::string(inst.fused_text.slice(inst.fused_text.sentences[i]));
      }
      ok = ok && rebuilt == s.modified_summary;
      if (!ok) ++violations;
    }
  }
  o.check(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = "50 instances, " + std::to_string(samples) + " samples, 0 violations";
  return o;
}

// ---- encoding -------------------------------------------------------------

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

Outcome encoding_round_trip() {
  Outcome o;
  SplitMix64 rng(77);
  for (int t = 0; t < 1000 && o.pass; ++t) {
    const auto inst = testing::random_instance(rng, "enc" + std::to_string(t));
    const auto with = dataset::render_input(inst, dataset::EncodingMode::WithHighlights);
    const auto plain = dataset::render_input(inst, dataset::EncodingMode::NoHighlights);
    const auto merged = dataset::merged_review_highlights(inst);
    std::size_t spans = 0;
    for (const auto& h : merged) spans += h.spans.size();
    o.check(count_of(with.text, with.marker_open) == spans && count_of(with.text, with.marker_close) == spans,
            "unbalanced markers on instance " + std::to_string(t));
    const auto decoded = dataset::decode_markup(with.text);
    o.check(decoded.stripped == plain.text, "stripped text differs on instance " + std::to_string(t));
    o.check(dataset::locate_review_highlights(decoded, inst.review_set) == merged,
            "spans differ on instance " + std::to_string(t));
  }
  if (o.pass) o.detail = "1000 instances round-trip byte-exact";
  return o;
}

// ---- end to end -----------------------------------------------------------

Outcome end_to_end() {
  Outcome o;
  SplitMix64 rng(8);
  std::vector<corpus::FiCInstance> test;
  while (test.size() < 5) {
    auto inst = testing::random_instance(rng, "e2e" + std::to_string(test.size()));
    if (inst.highlights.empty()) continue;
    inst.split = corpus::Split::Test;
    test.push_back(std::move(inst));
  }
  const struct { const char* id; double entail, contain; } systems[] = {
      {"sys-1", 0.9, 0.5}, {"sys-2", 0.7, 0.7}, {"sys-3", 0.6, 0.95}};
  // Hand-computed F-1: 2fc/(f+c) = 64.29, 70.00, 73.55.
  const std::vector<std::string> expected = {"sys-3", "sys-2", "sys-1"};

  testing::TempDir dir("acceptance_e2e");
  bench::Leaderboard board(dir.path());
  for (const auto& s : systems) {
    gateway::MockGateway g(0.5, 2);
    g.set_kind_default(gateway::ScorerKind::Entailment, s.entail);
    g.set_kind_default(gateway::ScorerKind::Containment, s.contain);
    std::vector<corpus::SystemOutput> outputs;
    for (const auto& inst : test) {
      outputs.push_back(corpus::SystemOutput::from_passage(inst.instance_id, s.id,
                                                           testing::random_text(rng, 12)));
    }
    for (std::size_t i = 0; i < test.size(); ++i) {
      const auto r1 = metrics::to_json(metrics::evaluate_output(test[i], outputs[i], g)).dump();
      const auto r2 = metrics::to_json(metrics::evaluate_output(test[i], outputs[i], g)).dump();
      o.check(r1 == r2, std::string("non-deterministic report for ") + s.id);
    }
    board.submit(test, outputs, s.id, g);
  }
  const auto table = bench::Leaderboard(dir.path()).table();
  std::vector<std::string> order;
  for (const auto& r : table.rows) order.push_back(r.submission.system_id);
  o.check(order == expected, "ranking differs from the hand sort");
  const auto text = bench::render_text(table);
  for (const char* v : {"73.5", "70.0", "64.3"}) o.check(text.find(v) != std::string::npos, std::string("missing F-1 ") + v);
  if (o.pass) o.detail = "ranking sys-3 > sys-2 > sys-1 (73.5/70.0/64.3); reports deterministic";
  return o;
}

// ---- dataset statistics ---------------------------------------------------

Outcome dataset_statistics() {
  Outcome o;
  const auto table = dataset::compute_statistics(testing::stats_fixture());
  const auto& all = *table.find("overall");
  auto near = [](double a, double b) { return std::abs(a - b) <= 0.01; };
  o.check(all.unique_review_sets == 2 && all.pair_count == 4 && all.max_review_tokens == 9 &&
              all.max_review_set_tokens == 10 && all.max_summary_tokens == 10 &&
              all.aligned_summary_sentences == 5,
          "integer fields differ");
  o.check(near(all.mean_summaries_per_set, 2.0) && near(all.mean_review_tokens, 19.0 / 3) &&
              near(all.mean_review_sentences, 2.0) && near(all.mean_summary_tokens, 6.25) &&
              near(all.mean_summary_sentences, 1.5) && near(all.pct_multi_review, 20.0) &&
              near(all.pct_multi_sentence, 40.0),
          "ratio fields differ");
  const auto& train = *table.find("train");
  const auto& test = *table.find("test");
  o.check(near(train.mean_review_tokens, 5.0) && near(train.pct_multi_review, 100.0 / 3) &&
              near(test.mean_review_tokens, 9.0) && near(test.pct_multi_sentence, 50.0),
          "split rows differ");

  const char* released = std::getenv("FUSEBENCH_RELEASED_DATA");
  if (released == nullptr || !fs::exists(released)) {
    if (o.pass) o.detail = "fixture exact; released dataset not available (set FUSEBENCH_RELEASED_DATA), Table 1 comparison skipped";
    return o;
  }
  const auto rel = dataset::compute_statistics(corpus::load_instances(released));
  const auto& r = *rel.find("overall");
  auto within = [](double got, double want) { return std::abs(got - want) <= 0.05 * want; };
  o.check(r.unique_review_sets == 320 && r.pair_count == 1000, "released counts differ");
  o.check(fmt("%.2f", r.pct_multi_review) == "83.15" && fmt("%.2f", r.pct_multi_sentence) == "53.29",
          fmt("released percentages %.2f / %.2f", r.pct_multi_review, r.pct_multi_sentence));
  o.check(within(r.mean_review_tokens, 83.99) && within(r.mean_summary_tokens, 72.62),
          fmt("released token means %.2f / %.2f", r.mean_review_tokens, r.mean_summary_tokens));
  if (o.pass) o.detail = "fixture exact; released dataset matches";
  return o;
}

// ---- annotation service ---------------------------------------------------

std::vector<std::size_t> embolden_oracle(const corpus::Document& summary, std::size_t sentence,
                                         const corpus::Document& review) {
  auto content = [](const corpus::Token& t) {
    const auto lower = corpus::to_lower(t.text);
    return t.is_word && std::any_of(lower.begin(), lower.end(), [](unsigned char c) { return c >= 'a' && c <= 'z'; }) &&
           !corpus::is_stopword(lower);
  };
  std::set<std::string> stems;
  const auto& sp = summary.sentences[sentence];
  for (const auto& t : summary.tokens) {
    if (t.span.start >= sp.start && t.span.end <= sp.end && content(t)) stems.insert(corpus::stem_of(t.text));
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < review.tokens.size(); ++i) {
    if (content(review.tokens[i]) && stems.count(corpus::stem_of(review.tokens[i].text))) out.push_back(i);
  }
  return out;
}

Outcome annotation_service() {
  using namespace annotation;
  Outcome o;

  // Qualification: 10,000 random event sequences.
  SplitMix64 rng(31337);
  std::size_t skips = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int closed = 1 + static_cast<int>(rng.below(3));
    QualificationState s;
    for (int step = 0; step < 14; ++step) {
      const auto ev = rng.below(5);
      QualificationState next;
      try {
        next = ev == 4 ? apply_tutorial(s) : apply_round_result(s, ev < 3, closed);
      } catch (const AnnotationError&) {
        if (!s.terminal() && !s.awaiting_tutorial) ++skips;
        continue;
      }
      bool legal = !s.terminal();
      if (ev == 4) {
        legal = legal && (next == s || (next.stage == s.stage && next.round == s.round) ||
                          (s.awaiting_tutorial && next.stage == Stage::ClosedRound && next.round == 1));
      } else if (ev == 3) {
        legal = legal && next.stage == Stage::Rejected;
      } else if (next.stage == Stage::Qualified) {
        legal = legal && s.stage == Stage::ClosedRound && s.round == closed;
      } else if (next.stage == Stage::ClosedRound && s.stage == Stage::OpenRound) {
        legal = legal && s.round == kOpenRounds && next.round == 1 && s.tutorial_completed;
      } else {
        legal = legal && next.stage == s.stage &&
                (next.round == s.round + 1 || (next.round == s.round && next.awaiting_tutorial));
      }
      if (!legal) ++skips;
      s = next;
    }
  }
  o.check(skips == 0, std::to_string(skips) + " illegal transitions");

  // Embolden against the stem-overlap oracle.
  SplitMix64 erng(4242);
  for (int t = 0; t < 100; ++t) {
    const auto summary = corpus::Document::from_text("s", testing::random_text(erng, 4 + erng.below(16)));
    const auto review = corpus::Document::from_text("r", testing::random_text(erng, 4 + erng.below(30)));
    const auto sentence = erng.below(summary.sentences.size());
    const auto got = embolden_tokens(summary, sentence, review);
    o.check(got == embolden_oracle(summary, sentence, review), "embolden mismatch on fixture " + std::to_string(t));
    o.check(got == embolden_tokens(summary, sentence, review), "embolden not repeatable");
  }

  // Crash replay: every truncation of the journal yields a prefix.
  testing::TempDir dir("acceptance_crash");
  Catalog catalog;
  auto rs = testing::make_review_set("rs", {testing::random_text(rng, 40)});
  const auto summary = corpus::Document::from_text("sum", "Great pool. Clean rooms.");
  catalog.add({rs, summary, true});
  std::vector<std::string> saved;
  std::string sid;
  {
    AnnotationService svc(catalog, {dir.path(), 3, 0});
    svc.register_worker("w");
    sid = svc.start_session("w", "rs", "sum").session_id;
    while (saved.size() < 20) {
      auto spans = testing::random_token_spans(rng, rs.reviews[0], 2);
      const auto r = svc.save_alignment(sid, testing::align_sentence(summary, 0, "r0", spans));
      if (r.status == SaveResult::Status::Saved) saved.push_back(r.alignment_id);
    }
  }
  std::ifstream in(dir.path() / "annotation.journal.ndjson", std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = bytes.find("alignment_saved");
  std::size_t cuts = 0;
  for (std::size_t keep = first; keep <= bytes.size(); keep += 7, ++cuts) {
    testing::TempDir copy("acceptance_crash_copy");
    std::ofstream(copy.path() / "annotation.journal.ndjson", std::ios::binary) << bytes.substr(0, keep);
    AnnotationService svc(catalog, {copy.path(), 3, 0});
    const auto got = svc.session(sid).saved_alignments;
    bool prefix = got.size() <= saved.size();
    for (std::size_t i = 0; prefix && i < got.size(); ++i) prefix = got[i].id == saved[i];
    o.check(prefix, "cut at byte " + std::to_string(keep) + " is not a prefix");
  }
  if (o.pass) {
    o.detail = "10000 sequences legal; 100 embolden fixtures; " + std::to_string(cuts) + " torn journals replay prefixes";
  }
  return o;
}

}  // namespace

int main() {
  criterion("f1-arithmetic", 1, f1_rows);
  criterion("correlation-oracles", 10, correlation_oracles);
  criterion("bootstrap-protocol", 30, bootstrap_protocol);
  criterion("lexical-oracles", 10, lexical_oracles);
  criterion("iou-agreement", 5, iou_suite);
  criterion("coverage-data", 5, coverage_data);
  criterion("encoding-round-trip", 5, encoding_round_trip);
  criterion("end-to-end-mock", 5, end_to_end);
  criterion("dataset-statistics", 60, dataset_statistics);
  criterion("annotation-service", 30, annotation_service);
  std::printf("%s: %d criteria failed\n", g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures);
  return g_failures == 0 ? 0 : 1;
}
