#include "mcfrag/canonical.hpp"

#include <algorithm>

#include <openssl/evp.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>

#include "mcfrag/error.hpp"

namespace mcfrag {
namespace {

bool is_ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (is_ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(c));
  }
  return out;
}

const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error(ErrorCode::kIo, "ICU NFC normaliser unavailable");
    return n;
  }();
  return *instance;
}

std::vector<UChar32> code_points(const icu::UnicodeString& us) {
  std::vector<UChar32> out;
  for (int32_t i = 0; i < us.length();) {
    UChar32 c = us.char32At(i);
    out.push_back(c);
    i += U16_LENGTH(c);
  }
  return out;
}

}  // namespace

Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string to_string(std::span<const std::uint8_t> b) {
  return std::string(b.begin(), b.end());
}

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) { ++i; continue; }
    if ((c & 0xE0) == 0xC0) { len = 2; cp = c & 0x1F; }
    else if ((c & 0xF0) == 0xE0) { len = 3; cp = c & 0x0F; }
    else if ((c & 0xF8) == 0xF0) { len = 4; cp = c & 0x07; }
    else return false;
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates, out of range.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      return false;
    i += len;
  }
  return true;
}

std::string canonical_term(std::string_view term) {
  std::string collapsed = collapse_whitespace(term);
  if (collapsed.empty()) return collapsed;
  icu::UnicodeString us = icu::UnicodeString::fromUTF8(
      icu::StringPiece(collapsed.data(), static_cast<int32_t>(collapsed.size())));
  us.toLower(icu::Locale::getRoot());
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc().normalize(us, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::kInvalidArgument, "NFC normalisation failed");
  std::string out;
  normalized.toUTF8String(out);
  // Lowercasing can introduce nothing but letters; collapse again for
  // exotic whitespace produced by normalisation.
  return collapse_whitespace(out);
}

std::vector<std::string> canonical_terms(std::span<const std::string> terms) {
  std::vector<std::string> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    std::string c = canonical_term(t);
    if (!c.empty()) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Bytes encode_term_set(std::span<const std::string> canonical) {
  Bytes out;
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    if (i) out.push_back('\n');
    out.insert(out.end(), canonical[i].begin(), canonical[i].end());
  }
  return out;
}

std::vector<std::string> decode_term_set(std::span<const std::uint8_t> bytes) {
  std::vector<std::string> out;
  if (bytes.empty()) return out;
  std::string cur;
  for (auto b : bytes) {
    if (b == '\n') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(b));
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string sha256_hex(std::span<const std::uint8_t> data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(len * 2, '0');
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = kHex[md[i] >> 4];
    out[2 * i + 1] = kHex[md[i] & 0xF];
  }
  return out;
}

std::optional<std::vector<std::size_t>> case_mask(std::string_view surface,
                                                  std::string_view canonical) {
  if (!is_valid_utf8(surface)) return std::nullopt;
  auto s = code_points(icu::UnicodeString::fromUTF8(
      icu::StringPiece(surface.data(), static_cast<int32_t>(surface.size()))));
  auto c = code_points(icu::UnicodeString::fromUTF8(
      icu::StringPiece(canonical.data(), static_cast<int32_t>(canonical.size()))));
  if (s.size() != c.size()) return std::nullopt;
  std::vector<std::size_t> upper;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == c[i]) continue;
    if (u_toupper(c[i]) != s[i]) return std::nullopt;
    upper.push_back(i);
  }
  if (apply_case_mask(canonical, upper) != surface) return std::nullopt;
  return upper;
}

std::string apply_case_mask(std::string_view canonical, std::span<const std::size_t> upper) {
  if (upper.empty()) return std::string(canonical);
  auto cps = code_points(icu::UnicodeString::fromUTF8(
      icu::StringPiece(canonical.data(), static_cast<int32_t>(canonical.size()))));
  for (auto i : upper)
    if (i < cps.size()) cps[i] = u_toupper(cps[i]);
  icu::UnicodeString us;
  for (auto cp : cps) us.append(cp);
  std::string out;
  us.toUTF8String(out);
  return out;
}

}  // namespace mcfrag
