#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcfrag/canonical.hpp"

namespace mcfrag {

// Content address of a fragment: SHA-256 of its canonical bytes, lowercase hex.
class FragmentKey {
 public:
  FragmentKey() = default;

  // Throws kInvalidArgument unless `hex` is 64 lowercase hex digits.
  static FragmentKey from_hex(std::string_view hex);
  static FragmentKey of_bytes(std::span<const std::uint8_t> canonical);

  const std::string& hex() const noexcept { return hex_; }
  bool empty() const noexcept { return hex_.empty(); }

  friend auto operator<=>(const FragmentKey&, const FragmentKey&) = default;

 private:
  explicit FragmentKey(std::string hex) : hex_(std::move(hex)) {}
  std::string hex_;
};

enum class FragmentKind { kTermSet, kByteBlock };
enum class Sensitivity { kIdentifier, kQuasiIdentifier, kNonSensitive };

std::string_view to_string(FragmentKind k);
std::string_view to_string(Sensitivity s);
FragmentKind fragment_kind_from_string(std::string_view s);
Sensitivity sensitivity_from_string(std::string_view s);

struct TermSetPayload {
  std::vector<std::string> terms;
};
using Payload = std::variant<TermSetPayload, Bytes>;

Bytes canonicalize(const Payload& payload);
FragmentKey fragment_key(const Payload& payload);

// Immutable fragment value. Fragments built through `term_set` / `byte_block`
// always self-verify; `from_stored` wraps whatever a CSP handed back.
class Fragment {
 public:
  static Fragment term_set(std::span<const std::string> terms,
                           Sensitivity sensitivity = Sensitivity::kQuasiIdentifier);
  static Fragment byte_block(Bytes bytes,
                             Sensitivity sensitivity = Sensitivity::kNonSensitive);
  static Fragment from_payload(const Payload& payload, Sensitivity sensitivity);
  static Fragment from_stored(FragmentKey key, FragmentKind kind, Bytes canonical,
                              Sensitivity sensitivity);

  const FragmentKey& key() const noexcept { return key_; }
  FragmentKind kind() const noexcept { return kind_; }
  Sensitivity sensitivity() const noexcept { return sensitivity_; }
  const Bytes& bytes() const noexcept { return bytes_; }

  // Decoded canonical terms (TermSet only; empty for byte blocks).
  std::vector<std::string> terms() const;
  Payload payload() const;

  // hash(bytes) == key, and TermSet bytes are in canonical form.
  bool self_verifies() const;
  bool verifies_against(const FragmentKey& expected) const;

  friend bool operator==(const Fragment&, const Fragment&) = default;

 private:
  Fragment(FragmentKey key, FragmentKind kind, Bytes bytes, Sensitivity s)
      : key_(std::move(key)), kind_(kind), sensitivity_(s), bytes_(std::move(bytes)) {}

  FragmentKey key_;
  FragmentKind kind_ = FragmentKind::kByteBlock;
  Sensitivity sensitivity_ = Sensitivity::kNonSensitive;
  Bytes bytes_;
};

}  // namespace mcfrag

template <>
struct std::hash<mcfrag::FragmentKey> {
  std::size_t operator()(const mcfrag::FragmentKey& k) const noexcept {
    return std::hash<std::string>{}(k.hex());
  }
};
