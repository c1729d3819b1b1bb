#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mcfrag/fragment.hpp"

namespace mcfrag {

enum class Tier { kPublic, kPrivate };
enum class Trust { kTrusted, kSemiHonest };

std::string_view to_string(Tier t);
std::string_view to_string(Trust t);
Tier tier_from_string(std::string_view s);
Trust trust_from_string(std::string_view s);

// Private clouds are trusted; public clouds are semi-honest.
struct CspDescriptor {
  std::string csp_id;
  Tier tier = Tier::kPublic;
  Trust trust = Trust::kSemiHonest;

  static CspDescriptor make(std::string csp_id, Tier tier);
  // Throws kInvalidArgument on a malformed id or tier/trust mismatch.
  void validate() const;

  friend bool operator==(const CspDescriptor&, const CspDescriptor&) = default;
};

bool is_valid_csp_id(std::string_view id);

struct StorageLocation {
  std::string csp_id;
  std::string object_key;

  // "csp_id:object_key"
  std::string str() const;
  static StorageLocation parse(std::string_view s);

  friend auto operator<=>(const StorageLocation&, const StorageLocation&) = default;
};

// One broadcast result: slot i answers for csp_list[i].
using SLoc = std::vector<std::optional<StorageLocation>>;

struct LocationEntry {
  FragmentKey fragment_key;
  SLoc slots;  // slot 0 is the PCSP

  bool any_present() const;
  friend bool operator==(const LocationEntry&, const LocationEntry&) = default;
};

struct LocationTable {
  std::string object_id;
  std::vector<std::string> csp_list;  // index 0 = PCSP
  std::vector<LocationEntry> rows;

  std::size_t width() const noexcept { return csp_list.size(); }
  // Throws kCorruptMetadata when a row's slot count differs from width().
  void validate() const;

  friend bool operator==(const LocationTable&, const LocationTable&) = default;
};

class RefCountIndex {
 public:
  void add(const FragmentKey& key, const std::string& object_id);
  void remove(const FragmentKey& key, const std::string& object_id);
  // Drops every reference held by `table`, then re-adds from its rows.
  void reindex(const LocationTable* before, const LocationTable* after);

  const std::set<std::string>& referents(const FragmentKey& key) const;
  std::size_t size() const noexcept { return refs_.size(); }
  const std::map<FragmentKey, std::set<std::string>>& entries() const noexcept {
    return refs_;
  }

  static RefCountIndex rebuild(const std::map<std::string, LocationTable>& tables);

  friend bool operator==(const RefCountIndex&, const RefCountIndex&) = default;

 private:
  std::map<FragmentKey, std::set<std::string>> refs_;
};

}  // namespace mcfrag
