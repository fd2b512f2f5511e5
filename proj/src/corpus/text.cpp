#include <algorithm>
#include <array>
#include <string_view>
#include <unordered_set>

#include "fusebench/corpus/text.hpp"
#include "utf8_internal.hpp"

namespace fusebench::corpus {

namespace {

constexpr std::array<std::string_view, 153> kStopwords = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an",
    "and", "any", "are", "aren't", "as", "at", "be", "because", "been",
    "before", "being", "below", "between", "both", "but", "by", "can",
    "can't", "cannot", "could", "couldn't", "did", "didn't", "do", "does",
    "doesn't", "doing", "don't", "down", "during", "each", "few", "for",
    "from", "further", "had", "hadn't", "has", "hasn't", "have", "haven't",
    "having", "he", "her", "here", "hers", "herself", "him", "himself", "his",
    "how", "i", "i'm", "i've", "if", "in", "into", "is", "isn't", "it", "it's",
    "its", "itself", "just", "me", "more", "most", "my", "myself", "no",
    "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other",
    "our", "ours", "ourselves", "out", "over", "own", "same", "she", "should",
    "shouldn't", "so", "some", "such", "than", "that", "that's", "the",
    "their", "theirs", "them", "themselves", "then", "there", "there's",
    "these", "they", "they're", "this", "those", "through", "to", "too",
    "under", "until", "up", "very", "was", "wasn't", "we", "we're", "were",
    "weren't", "what", "when", "where", "which", "while", "who", "whom", "why",
    "will", "with", "won't", "would", "wouldn't", "you", "you're", "your",
    "yours", "yourself", "yourselves", "also", "s", "t",
};

constexpr std::array<std::string_view, 24> kAbbreviations = {
    "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.",
    "vs.", "e.g.", "i.e.", "etc.", "approx.", "inc.", "ltd.", "co.",
    "mt.", "ave.", "no.", "min.", "hr.", "hrs.", "ft.", "u.s.",
};

const std::unordered_set<std::string_view>& stopword_set() {
  static const std::unordered_set<std::string_view> set(kStopwords.begin(),
                                                        kStopwords.end());
  return set;
}

// Lowercases and folds the typographic apostrophe to ASCII.
std::string key_form(std::string_view text) {
  std::string lower = to_lower(text);
  std::string out;
  out.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size();) {
    if (lower.compare(i, 3, "\xE2\x80\x99") == 0) {
      out.push_back('\'');
      i += 3;
    } else {
      out.push_back(lower[i++]);
    }
  }
  return out;
}

struct CodePoint {
  char32_t value;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> decode_all(std::string_view text) {
  std::vector<CodePoint> cps;
  cps.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t begin = i;
    const auto cp = detail::decode(text, i);
    // Malformed bytes are treated as U+FFFD so offsets stay consistent.
    cps.push_back({cp.value_or(U'�'), begin, i});
  }
  return cps;
}

bool has_letter(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto cp = detail::decode(text, i);
    if (cp && detail::is_letter(*cp)) return true;
  }
  return false;
}

bool is_terminator(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?'; }

bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"': case U'\'': case U')': case U']': case U'}':
    case U'”': case U'’': case U'»':
      return true;
    default:
      return false;
  }
}

bool is_abbreviation(std::string_view text, const std::vector<CodePoint>& cps,
                     std::size_t period_index) {
  // The candidate word: letters and interior periods right before the period.
  std::size_t first = period_index;
  while (first > 0) {
    const char32_t prev = cps[first - 1].value;
    if (detail::is_letter(prev) || prev == U'.') {
      --first;
    } else {
      break;
    }
  }
  if (first == period_index) return false;
  const auto word = key_form(text.substr(
      cps[first].begin, cps[period_index].end - cps[first].begin));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
         kAbbreviations.end();
}

}  // namespace

bool is_stopword(std::string_view lowercase_word) noexcept {
  return stopword_set().contains(lowercase_word);
}

std::string stem_of(std::string_view word) { return porter_stem(key_form(word)); }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  const auto cps = decode_all(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i].value;
    if (detail::is_space(c)) {
      ++i;
      continue;
    }
    const std::size_t first = i;
    const bool word = detail::is_word_char(c);
    ++i;
    if (word) {
      while (i < cps.size()) {
        if (detail::is_word_char(cps[i].value)) {
          ++i;
        } else if (detail::is_apostrophe(cps[i].value) && i + 1 < cps.size() &&
                   detail::is_word_char(cps[i + 1].value)) {
          i += 2;
        } else {
          break;
        }
      }
    } else {
      while (i < cps.size() && !detail::is_space(cps[i].value) &&
             !detail::is_word_char(cps[i].value)) {
        ++i;
      }
    }
    Token token;
    token.span = {cps[first].begin, cps[i - 1].end};
    token.text = std::string(text.substr(token.span.start, token.span.length()));
    const std::string key = key_form(token.text);
    token.stem = word ? porter_stem(key) : key;
    token.is_word = word;
    token.is_content_word = has_letter(token.text) && !is_stopword(key);
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::vector<Span> split_sentences(std::string_view text) {
  const auto cps = decode_all(text);
  std::vector<std::size_t> boundaries;  // code-point index where a sentence ends
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_terminator(cps[i].value)) {
      ++i;
      continue;
    }
    const std::size_t run_start = i;
    while (i < cps.size() && is_terminator(cps[i].value)) ++i;
    while (i < cps.size() && is_closer(cps[i].value)) ++i;
    const std::size_t run_end = i;
    std::size_t next = run_end;
    while (next < cps.size() && detail::is_space(cps[next].value)) ++next;
    if (next == run_end || next >= cps.size()) continue;
    if (!detail::is_upper_or_digit(cps[next].value)) continue;
    const bool lone_period =
        cps[run_start].value == U'.' &&
        (run_start + 1 == cps.size() || !is_terminator(cps[run_start + 1].value));
    if (lone_period && is_abbreviation(text, cps, run_start)) continue;
    boundaries.push_back(run_end);
  }
  boundaries.push_back(cps.size());

  std::vector<Span> sentences;
  std::size_t begin = 0;
  for (const std::size_t end : boundaries) {
    std::size_t lo = begin;
    std::size_t hi = end;
    while (lo < hi && detail::is_space(cps[lo].value)) ++lo;
    while (hi > lo && detail::is_space(cps[hi - 1].value)) --hi;
    if (lo < hi) sentences.push_back({cps[lo].begin, cps[hi - 1].end});
    begin = end;
  }
  return sentences;
}

std::vector<std::size_t> tokens_in(const std::vector<Token>& tokens,
                                   const Span& span) {
  std::vector<std::size_t> out;
  auto it = std::lower_bound(
      tokens.begin(), tokens.end(), span.start,
      [](const Token& t, std::size_t offset) { return t.span.end <= offset; });
  for (; it != tokens.end() && it->span.start < span.end; ++it) {
    if (it->span.overlaps(span)) {
      out.push_back(static_cast<std::size_t>(it - tokens.begin()));
    }
  }
  return out;
}

}  // namespace fusebench::corpus
