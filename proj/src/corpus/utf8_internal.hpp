#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace fusebench::corpus::detail {

// Decodes the code point at text[i] and advances i past it. Returns nullopt
// (after advancing past the bad bytes) on malformed input.
std::optional<char32_t> decode(std::string_view text, std::size_t& i) noexcept;
void append_utf8(std::string& out, char32_t cp);

bool is_word_char(char32_t cp) noexcept;
bool is_letter(char32_t cp) noexcept;
bool is_space(char32_t cp) noexcept;
bool is_upper_or_digit(char32_t cp) noexcept;
bool is_apostrophe(char32_t cp) noexcept;

}  // namespace fusebench::corpus::detail
