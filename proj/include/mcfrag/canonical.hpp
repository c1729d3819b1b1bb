#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcfrag {

using Bytes = std::vector<std::uint8_t>;

Bytes to_bytes(std::string_view s);
std::string to_string(std::span<const std::uint8_t> b);

bool is_valid_utf8(std::string_view s);

// Lowercase + NFC, whitespace runs collapsed to one space, trimmed.
// Invalid UTF-8 sequences are replaced with U+FFFD.
std::string canonical_term(std::string_view term);

// Canonical form of a term list: each term canonicalised, empties dropped,
// sorted by byte order and deduplicated.
std::vector<std::string> canonical_terms(std::span<const std::string> terms);

// LF-joined canonical terms.
Bytes encode_term_set(std::span<const std::string> canonical);
std::vector<std::string> decode_term_set(std::span<const std::uint8_t> bytes);

// Lowercase hex SHA-256.
std::string sha256_hex(std::span<const std::uint8_t> data);

// Code point indices of `canonical` that must be uppercased to reproduce
// `surface`; nullopt when no such mask reproduces it byte-exactly.
std::optional<std::vector<std::size_t>> case_mask(std::string_view surface,
                                                  std::string_view canonical);
std::string apply_case_mask(std::string_view canonical,
                            std::span<const std::size_t> upper);

}  // namespace mcfrag
