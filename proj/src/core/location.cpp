#include "mcfrag/location.hpp"

#include "mcfrag/error.hpp"

namespace mcfrag {

std::string_view to_string(Tier t) { return t == Tier::kPublic ? "public" : "private"; }
std::string_view to_string(Trust t) { return t == Trust::kTrusted ? "trusted" : "semi-honest"; }

Tier tier_from_string(std::string_view s) {
  if (s == "public") return Tier::kPublic;
  if (s == "private") return Tier::kPrivate;
  throw Error(ErrorCode::kInvalidArgument, "unknown tier: " + std::string(s));
}

Trust trust_from_string(std::string_view s) {
  if (s == "trusted") return Trust::kTrusted;
  if (s == "semi-honest") return Trust::kSemiHonest;
  throw Error(ErrorCode::kInvalidArgument, "unknown trust level: " + std::string(s));
}

bool is_valid_csp_id(std::string_view id) {
  if (id.empty() || id.size() > 32) return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return id != "." && id != "..";
}

CspDescriptor CspDescriptor::make(std::string csp_id, Tier tier) {
  CspDescriptor d{std::move(csp_id), tier,
                  tier == Tier::kPrivate ? Trust::kTrusted : Trust::kSemiHonest};
  d.validate();
  return d;
}

void CspDescriptor::validate() const {
  if (!is_valid_csp_id(csp_id))
    throw Error(ErrorCode::kInvalidArgument, "invalid CSP id: '" + csp_id + "'");
  bool consistent = (tier == Tier::kPrivate) == (trust == Trust::kTrusted);
  if (!consistent)
    throw Error(ErrorCode::kInvalidArgument,
                "CSP " + csp_id + ": private clouds are trusted, public clouds semi-honest");
}

std::string StorageLocation::str() const { return csp_id + ":" + object_key; }

StorageLocation StorageLocation::parse(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == s.size())
    throw Error(ErrorCode::kInvalidArgument,
                "storage location must be <csp_id>:<key>, got '" + std::string(s) + "'");
  return {std::string(s.substr(0, colon)), std::string(s.substr(colon + 1))};
}

bool LocationEntry::any_present() const {
  for (const auto& s : slots)
    if (s) return true;
  return false;
}

void LocationTable::validate() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].slots.size() != csp_list.size())
      throw Error(ErrorCode::kCorruptMetadata,
                  "object " + object_id + " row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].slots.size()) + " slots, expected " +
                      std::to_string(csp_list.size()));
  }
}

void RefCountIndex::add(const FragmentKey& key, const std::string& object_id) {
  refs_[key].insert(object_id);
}

void RefCountIndex::remove(const FragmentKey& key, const std::string& object_id) {
  auto it = refs_.find(key);
  if (it == refs_.end()) return;
  it->second.erase(object_id);
  if (it->second.empty()) refs_.erase(it);
}

void RefCountIndex::reindex(const LocationTable* before, const LocationTable* after) {
  if (before)
    for (const auto& row : before->rows) remove(row.fragment_key, before->object_id);
  if (after)
    for (const auto& row : after->rows) add(row.fragment_key, after->object_id);
}

const std::set<std::string>& RefCountIndex::referents(const FragmentKey& key) const {
  static const std::set<std::string> kEmpty;
  auto it = refs_.find(key);
  return it == refs_.end() ? kEmpty : it->second;
}

RefCountIndex RefCountIndex::rebuild(const std::map<std::string, LocationTable>& tables) {
  RefCountIndex idx;
  for (const auto& [id, table] : tables)
    for (const auto& row : table.rows) idx.add(row.fragment_key, id);
  return idx;
}

}  // namespace mcfrag
