#include "mcfrag/fragment.hpp"

#include "mcfrag/error.hpp"

namespace mcfrag {
namespace {

bool is_lower_hex(std::string_view s) {
  for (char c : s)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  return true;
}

}  // namespace

FragmentKey FragmentKey::from_hex(std::string_view hex) {
  if (hex.size() != 64 || !is_lower_hex(hex))
    throw Error(ErrorCode::kInvalidArgument, "malformed fragment key: " + std::string(hex));
  return FragmentKey(std::string(hex));
}

FragmentKey FragmentKey::of_bytes(std::span<const std::uint8_t> canonical) {
  return FragmentKey(sha256_hex(canonical));
}

std::string_view to_string(FragmentKind k) {
  return k == FragmentKind::kTermSet ? "term_set" : "byte_block";
}

std::string_view to_string(Sensitivity s) {
  switch (s) {
    case Sensitivity::kIdentifier: return "identifier";
    case Sensitivity::kQuasiIdentifier: return "quasi_identifier";
    case Sensitivity::kNonSensitive: return "non_sensitive";
  }
  return "non_sensitive";
}

FragmentKind fragment_kind_from_string(std::string_view s) {
  if (s == "term_set") return FragmentKind::kTermSet;
  if (s == "byte_block") return FragmentKind::kByteBlock;
  throw Error(ErrorCode::kInvalidArgument, "unknown fragment kind: " + std::string(s));
}

Sensitivity sensitivity_from_string(std::string_view s) {
  if (s == "identifier") return Sensitivity::kIdentifier;
  if (s == "quasi_identifier") return Sensitivity::kQuasiIdentifier;
  if (s == "non_sensitive") return Sensitivity::kNonSensitive;
  throw Error(ErrorCode::kInvalidArgument, "unknown sensitivity: " + std::string(s));
}

Bytes canonicalize(const Payload& payload) {
  if (const auto* ts = std::get_if<TermSetPayload>(&payload))
    return encode_term_set(canonical_terms(ts->terms));
  return std::get<Bytes>(payload);
}

FragmentKey fragment_key(const Payload& payload) {
  return FragmentKey::of_bytes(canonicalize(payload));
}

Fragment Fragment::term_set(std::span<const std::string> terms, Sensitivity sensitivity) {
  Bytes bytes = encode_term_set(canonical_terms(terms));
  auto key = FragmentKey::of_bytes(bytes);
  return Fragment(std::move(key), FragmentKind::kTermSet, std::move(bytes), sensitivity);
}

Fragment Fragment::byte_block(Bytes bytes, Sensitivity sensitivity) {
  auto key = FragmentKey::of_bytes(bytes);
  return Fragment(std::move(key), FragmentKind::kByteBlock, std::move(bytes), sensitivity);
}

Fragment Fragment::from_payload(const Payload& payload, Sensitivity sensitivity) {
  if (const auto* ts = std::get_if<TermSetPayload>(&payload))
    return term_set(ts->terms, sensitivity);
  return byte_block(std::get<Bytes>(payload), sensitivity);
}

Fragment Fragment::from_stored(FragmentKey key, FragmentKind kind, Bytes canonical,
                               Sensitivity sensitivity) {
  return Fragment(std::move(key), kind, std::move(canonical), sensitivity);
}

std::vector<std::string> Fragment::terms() const {
  if (kind_ != FragmentKind::kTermSet) return {};
  return decode_term_set(bytes_);
}

Payload Fragment::payload() const {
  if (kind_ == FragmentKind::kTermSet) return TermSetPayload{terms()};
  return bytes_;
}

bool Fragment::self_verifies() const { return verifies_against(key_); }

bool Fragment::verifies_against(const FragmentKey& expected) const {
  if (expected.empty() || sha256_hex(bytes_) != expected.hex()) return false;
  if (kind_ == FragmentKind::kTermSet) {
    auto decoded = terms();
    if (encode_term_set(canonical_terms(decoded)) != bytes_) return false;
  }
  return true;
}

}  // namespace mcfrag
