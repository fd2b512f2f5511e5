#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "fusebench/corpus/errors.hpp"
#include "fusebench/corpus/text.hpp"
#include "utf8_internal.hpp"

namespace fusebench::corpus {

bool is_valid_utf8(std::string_view text) noexcept {
  std::size_t i = 0;
  while (i < text.size()) {
    if (!detail::decode(text, i)) return false;
  }
  return true;
}

bool is_code_point_boundary(std::string_view text,
                            std::size_t offset) noexcept {
  if (offset == 0 || offset == text.size()) return true;
  if (offset > text.size()) return false;
  return (static_cast<unsigned char>(text[offset]) & 0xC0) != 0x80;
}

std::string normalize_nfc(std::string_view text) {
  if (!is_valid_utf8(text)) {
    throw CorpusError(CorpusErrc::InvalidUtf8, "text is not valid UTF-8");
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw CorpusError(CorpusErrc::InvalidUtf8, "NFC normalizer unavailable");
  }
  const auto source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (nfc->isNormalized(source, status) && U_SUCCESS(status)) {
    return std::string(text);
  }
  status = U_ZERO_ERROR;
  const auto normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) {
    throw CorpusError(CorpusErrc::InvalidUtf8, "NFC normalization failed");
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t begin = i;
    const auto cp = detail::decode(text, i);
    if (!cp) {
      out.append(text.substr(begin, i - begin));
      continue;
    }
    if (*cp < 0x80) {
      const char c = static_cast<char>(*cp);
      out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
      continue;
    }
    detail::append_utf8(out, u_tolower(*cp));
  }
  return out;
}

namespace detail {

std::optional<char32_t> decode(std::string_view text, std::size_t& i) noexcept {
  UChar32 c;
  int32_t pos = static_cast<int32_t>(i);
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  U8_NEXT(s, pos, static_cast<int32_t>(text.size()), c);
  i = static_cast<std::size_t>(pos);
  if (c < 0) return std::nullopt;
  return static_cast<char32_t>(c);
}

void append_utf8(std::string& out, char32_t cp) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (!error) out.append(reinterpret_cast<const char*>(buf), len);
}

bool is_letter(char32_t cp) noexcept;

bool is_word_char(char32_t cp) noexcept {
  return is_letter(cp) || u_isdigit(static_cast<UChar32>(cp));
}

bool is_letter(char32_t cp) noexcept {
  return u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_ALPHABETIC);
}

bool is_space(char32_t cp) noexcept {
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

bool is_upper_or_digit(char32_t cp) noexcept {
  return u_isupper(static_cast<UChar32>(cp)) || u_istitle(static_cast<UChar32>(cp)) ||
         u_isdigit(static_cast<UChar32>(cp));
}

bool is_apostrophe(char32_t cp) noexcept { return cp == U'\'' || cp == U'’'; }

}  // namespace detail

}  // namespace fusebench::corpus
