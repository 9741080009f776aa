#include "ackcensus/model.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <stdexcept>

namespace ackcensus {

namespace {

bool is_ascii(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

const icu::Normalizer2& nfkd() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKDInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFKD normalizer unavailable");
    return n;
  }();
  return *instance;
}

}  // namespace

std::string fold_text(std::string_view text) {
  if (is_ascii(text)) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; });
    return out;
  }

  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString source =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString decomposed = nfkd().normalize(source, status);
  if (U_FAILURE(status)) return {};

  icu::UnicodeString stripped;
  for (int32_t i = 0; i < decomposed.length();) {
    const UChar32 c = decomposed.char32At(i);
    if (u_charType(c) != U_NON_SPACING_MARK) stripped.append(c);
    i += U16_LENGTH(c);
  }
  stripped.foldCase();

  std::string out;
  stripped.toUTF8String(out);
  return out;
}

std::string fold_surname(std::string_view text) {
  const std::string folded = fold_text(text);
  std::string out;
  out.reserve(folded.size());
  // Operates on UTF-8 bytes; the multi-byte joiners are matched as sequences.
  for (std::size_t i = 0; i < folded.size();) {
    const unsigned char c = static_cast<unsigned char>(folded[i]);
    if (c == '-' || c == '\'' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (c == 0xE2 && i + 2 < folded.size() && static_cast<unsigned char>(folded[i + 1]) == 0x80) {
      const unsigned char last = static_cast<unsigned char>(folded[i + 2]);
      if (last == 0x90 || last == 0x91 || last == 0x99) {
        i += 3;
        continue;
      }
    }
    out.push_back(folded[i]);
    ++i;
  }
  return out;
}

}  // namespace ackcensus
