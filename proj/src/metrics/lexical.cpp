#include "fusebench/metrics/lexical.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fusebench/corpus/text.hpp"
#include "fusebench/metrics/errors.hpp"

namespace fusebench::metrics {

namespace {

std::vector<std::string> lowered(Tokens tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(corpus::to_lower(t));
  return out;
}

std::map<std::vector<std::string>, std::size_t> ngram_counts(const std::vector<std::string>& tokens,
                                                             std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

MetricScore from_pr(std::string name, double recall, double precision) {
  MetricScore s;
  s.name = std::move(name);
  s.recall = recall;
  s.precision = precision;
  s.f1 = harmonic_mean(recall, precision);
  s.value = *s.f1;
  return s;
}

}  // namespace

double harmonic_mean(double a, double b) {
  if (a + b == 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

double round1(double x) { return std::round(x * 10.0) / 10.0; }

double harmonic_f1(double faithfulness, double coverage) {
  return round1(harmonic_mean(faithfulness, coverage));
}

std::vector<std::string> lexical_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : corpus::tokenize(text)) {
    if (t.is_word) out.push_back(corpus::to_lower(t.text));
  }
  return out;
}

MetricScore rouge_n(Tokens reference, Tokens candidate, std::size_t n) {
  if (n == 0) throw MetricsError(MetricsErrc::InvalidArgument, "rouge n must be >= 1");
  const auto ref = ngram_counts(lowered(reference), n);
  const auto cand = ngram_counts(lowered(candidate), n);
  std::size_t ref_total = 0;
  std::size_t cand_total = 0;
  std::size_t overlap = 0;
  for (const auto& [gram, count] : ref) ref_total += count;
  for (const auto& [gram, count] : cand) {
    cand_total += count;
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  const auto o = static_cast<double>(overlap);
  return from_pr("rouge" + std::to_string(n), safe_div(o, static_cast<double>(ref_total)),
                 safe_div(o, static_cast<double>(cand_total)));
}

MetricScore rouge_l(Tokens reference, Tokens candidate) {
  const auto ref = lowered(reference);
  const auto cand = lowered(candidate);
  std::vector<std::size_t> prev(cand.size() + 1, 0);
  std::vector<std::size_t> cur(cand.size() + 1, 0);
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    for (std::size_t j = 1; j <= cand.size(); ++j) {
      cur[j] = ref[i - 1] == cand[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const auto lcs = static_cast<double>(prev[cand.size()]);
  return from_pr("rougeL", safe_div(lcs, static_cast<double>(ref.size())),
                 safe_div(lcs, static_cast<double>(cand.size())));
}

MetricScore meteor_lite(Tokens reference, Tokens candidate) {
  const auto ref = lowered(reference);
  const auto cand = lowered(candidate);
  std::vector<std::string> ref_stems;
  std::vector<std::string> cand_stems;
  for (const auto& t : ref) ref_stems.push_back(corpus::stem_of(t));
  for (const auto& t : cand) cand_stems.push_back(corpus::stem_of(t));

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match(cand.size(), kNone);  // candidate -> reference
  std::vector<bool> ref_used(ref.size(), false);

  // Greedy per stage, preferring the reference position right after the
  // previous candidate token's match so contiguous runs stay together.
  auto run_stage = [&](const std::vector<std::string>& r, const std::vector<std::string>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (match[i] != kNone) continue;
      std::size_t pick = kNone;
      if (i > 0 && match[i - 1] != kNone) {
        const std::size_t next = match[i - 1] + 1;
        if (next < r.size() && !ref_used[next] && r[next] == c[i]) pick = next;
      }
      for (std::size_t j = 0; pick == kNone && j < r.size(); ++j) {
        if (!ref_used[j] && r[j] == c[i]) pick = j;
      }
      if (pick != kNone) {
        match[i] = pick;
        ref_used[pick] = true;
      }
    }
  };
  run_stage(ref, cand);
  run_stage(ref_stems, cand_stems);

  std::size_t matches = 0;
  std::size_t chunks = 0;
  std::size_t prev_cand = kNone;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (match[i] == kNone) continue;
    ++matches;
    const bool continues = prev_cand != kNone && prev_cand + 1 == i &&
                           match[prev_cand] + 1 == match[i];
    if (!continues) ++chunks;
    prev_cand = i;
  }

  MetricScore s;
  s.name = "meteor";
  const double m = static_cast<double>(matches);
  const double p = safe_div(m, static_cast<double>(cand.size()));
  const double r = safe_div(m, static_cast<double>(ref.size()));
  s.recall = r;
  s.precision = p;
  s.f1 = harmonic_mean(p, r);
  if (matches == 0) return s;
  const double fmean = 10.0 * p * r / (r + 9.0 * p);
  const double penalty = 0.5 * std::pow(static_cast<double>(chunks) / m, 3.0);
  s.value = fmean * (1.0 - penalty);
  return s;
}

}  // namespace fusebench::metrics
