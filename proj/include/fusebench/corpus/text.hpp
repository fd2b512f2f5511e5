#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fusebench::corpus {

// Half-open range [start, end) of UTF-8 byte offsets into a document's text.
// Offsets always fall on code-point boundaries.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start; }
  bool empty() const noexcept { return end <= start; }
  bool overlaps(const Span& other) const noexcept {
    return start < other.end && other.start < end;
  }
  bool contains(const Span& other) const noexcept {
    return start <= other.start && other.end <= end;
  }

  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Token {
  std::string text;
  Span span;
  bool is_word = false;  // letters/digits, as opposed to a punctuation run
  bool is_content_word = false;
  std::string stem;

  friend bool operator==(const Token&, const Token&) = default;
};

// UTF-8 helpers.
bool is_valid_utf8(std::string_view text) noexcept;
bool is_code_point_boundary(std::string_view text, std::size_t offset) noexcept;
// NFC normalization; throws CorpusError(InvalidUtf8) on malformed input.
std::string normalize_nfc(std::string_view text);
std::string to_lower(std::string_view text);

// Porter (1980) suffix stripper. Expects lowercase ASCII; other input is
// returned unchanged.
std::string porter_stem(std::string_view word);

bool is_stopword(std::string_view lowercase_word) noexcept;

// Stem of a word token as stored in Token::stem (lowercased, typographic
// apostrophe folded, then stemmed).
std::string stem_of(std::string_view word);

// Tokens are maximal runs of letters/digits (an apostrophe between two
// letters/digits joins the run, e.g. "don't"), or maximal runs of other
// non-space characters (punctuation). Whitespace yields no token.
std::vector<Token> tokenize(std::string_view text);

// Splits after a run of '.', '!' or '?' (plus any closing quotes/brackets)
// when followed by whitespace and an uppercase letter or digit, unless the
// word carrying the period is a known abbreviation. Each returned span is
// trimmed of surrounding whitespace.
std::vector<Span> split_sentences(std::string_view text);

// Indices of the tokens that intersect `span`.
std::vector<std::size_t> tokens_in(const std::vector<Token>& tokens,
                                   const Span& span);

}  // namespace fusebench::corpus
