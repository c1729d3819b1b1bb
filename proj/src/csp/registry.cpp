#include <algorithm>

#include "core/json_io.hpp"
#include "mcfrag/csp_store.hpp"
#include "mcfrag/error.hpp"

namespace mcfrag {

namespace fs = std::filesystem;

CspStore& CspRegistry::add(CspStore store) {
  if (find(store.id()))
    throw Error(ErrorCode::kInvalidArgument, "CSP " + store.id() + " already registered");
  stores_.push_back(std::make_unique<CspStore>(std::move(store)));
  return *stores_.back();
}

CspStore* CspRegistry::find(std::string_view id) noexcept {
  for (auto& s : stores_)
    if (s->id() == id) return s.get();
  return nullptr;
}

const CspStore* CspRegistry::find(std::string_view id) const noexcept {
  for (const auto& s : stores_)
    if (s->id() == id) return s.get();
  return nullptr;
}

CspStore& CspRegistry::get(std::string_view id) {
  if (auto* s = find(id)) return *s;
  throw Error(ErrorCode::kUnknownCsp, "unknown CSP " + std::string(id));
}

const CspStore& CspRegistry::get(std::string_view id) const {
  if (const auto* s = find(id)) return *s;
  throw Error(ErrorCode::kUnknownCsp, "unknown CSP " + std::string(id));
}

std::vector<std::string> CspRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& s : stores_) out.push_back(s->id());
  return out;
}

CspCounters CspRegistry::total_counters() const {
  CspCounters total;
  for (const auto& s : stores_) {
    auto c = s->counters();
    total.queries += c.queries;
    total.stores += c.stores;
    total.writes += c.writes;
    total.fetches += c.fetches;
    total.removes += c.removes;
  }
  return total;
}

void CspRegistry::reset_counters() {
  for (auto& s : stores_) s->reset_counters();
}

CspRegistry CspRegistry::clone() const {
  CspRegistry out;
  for (const auto& s : stores_) out.stores_.push_back(std::make_unique<CspStore>(*s));
  return out;
}

void CspRegistry::save(const fs::path& root) const {
  fs::create_directories(root);
  for (const auto& s : stores_) s->save(root);
  io::write_json(root / "registry.json", {{"schema", io::kSchemaVersion}, {"csps", ids()}});
}

CspRegistry CspRegistry::load(const fs::path& root) {
  CspRegistry out;
  if (!fs::exists(root / "registry.json")) return out;
  auto j = io::read_json(root / "registry.json");
  io::require_schema(j, (root / "registry.json").string());
  for (const auto& id : j.at("csps")) out.add(CspStore::load(root / id.get<std::string>()));
  return out;
}

}  // namespace mcfrag
