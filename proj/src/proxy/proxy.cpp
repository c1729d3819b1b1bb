#include "mcfrag/proxy.hpp"

#include <algorithm>
#include <future>

#include "mcfrag/error.hpp"

namespace mcfrag {

std::string_view to_string(StorePolicy p) {
  return p == StorePolicy::kPcspIfMissing ? "pcsp-if-missing" : "skip-if-any-found";
}

StorePolicy store_policy_from_string(std::string_view s) {
  if (s == "pcsp-if-missing") return StorePolicy::kPcspIfMissing;
  if (s == "skip-if-any-found") return StorePolicy::kSkipIfAnyFound;
  throw Error(ErrorCode::kInvalidArgument, "unknown store policy: " + std::string(s));
}

std::string_view to_string(UpdateApproach a) {
  return a == UpdateApproach::kInPlace ? "in-place" : "new-pcsp";
}

UpdateApproach update_approach_from_string(std::string_view s) {
  if (s == "in-place") return UpdateApproach::kInPlace;
  if (s == "new-pcsp") return UpdateApproach::kNewPcsp;
  throw Error(ErrorCode::kInvalidArgument, "unknown update approach: " + std::string(s));
}

namespace {

bool is_valid_object_id(std::string_view id) {
  if (id.empty() || id.size() > 128 || id == "." || id == "..") return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

// Runs fn(i) for i in [0, n), concurrently when asked, and returns results
// in index order.
template <typename Fn>
auto fan_out(FanOut mode, std::size_t n, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out;
  out.reserve(n);
  if (mode == FanOut::kSequential || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<R>> futures;
  futures.reserve(n);
  for (std::size_t i = 0; i < n; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace

Proxy::Proxy(CspRegistry& registry, FanOut fan_out) : registry_(registry), fan_out_(fan_out) {}

void Proxy::log_event(const std::string& csp_id, const std::string& message) const {
  std::lock_guard lock(events_mu_);
  events_.push_back({csp_id, message});
}

std::vector<ProxyEvent> Proxy::events() const {
  std::lock_guard lock(events_mu_);
  return events_;
}

void Proxy::clear_events() {
  std::lock_guard lock(events_mu_);
  events_.clear();
}

std::mutex& Proxy::object_mutex(const std::string& object_id) {
  std::lock_guard lock(state_mu_);
  auto& slot = object_mu_[object_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

SLoc Proxy::broadcast_query(const FragmentKey& key, std::span<const std::string> csp_list) const {
  if (csp_list.empty()) throw Error(ErrorCode::kEmptyCspList, "broadcast needs at least one CSP");
  std::vector<const CspStore*> stores;
  stores.reserve(csp_list.size());
  for (const auto& id : csp_list) stores.push_back(&registry_.get(id));
  return fan_out(fan_out_, stores.size(), [&](std::size_t i) -> std::optional<StorageLocation> {
    try {
      return stores[i]->query(key);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCspUnreachable) throw;
      log_event(stores[i]->id(), "query unanswered: " + std::string(e.what()));
      return std::nullopt;
    }
  });
}

LocationTable Proxy::outsource(const std::string& object_id, std::span<const Fragment> fragments,
                               std::span<const std::string> csp_list, StorePolicy policy) {
  OutsourceRequest req;
  req.object_id = object_id;
  req.csp_list.assign(csp_list.begin(), csp_list.end());
  req.policy = policy;
  for (const auto& f : fragments) req.items.push_back({f, std::nullopt, true});
  return outsource(std::move(req)).table;
}

OutsourceResult Proxy::outsource(OutsourceRequest req) {
  if (!is_valid_object_id(req.object_id))
    throw Error(ErrorCode::kInvalidArgument, "invalid object id '" + req.object_id + "'");
  if (req.csp_list.empty())
    throw Error(ErrorCode::kEmptyCspList, "outsourcing needs at least one CSP");
  for (const auto& id : req.csp_list) registry_.get(id);
  for (const auto& item : req.items) {
    if (!item.fragment.self_verifies())
      throw Error(ErrorCode::kSelfCheckFailed,
                  "fragment " + item.fragment.key().hex() + " does not match its payload");
    if (item.known && item.known->size() != req.csp_list.size())
      throw Error(ErrorCode::kInvalidArgument, "precomputed sLoc has the wrong width");
  }

  std::lock_guard object_lock(object_mutex(req.object_id));
  if (has_object(req.object_id))
    throw Error(ErrorCode::kObjectExists, "object " + req.object_id + " already outsourced");

  CspStore& pcsp = registry_.get(req.csp_list.front());
  if (!pcsp.reachable())
    throw Error(ErrorCode::kPcspUnreachable, "primary CSP " + pcsp.id() + " is unreachable");

  OutsourceResult result;
  result.table.object_id = req.object_id;
  result.table.csp_list = req.csp_list;
  std::vector<StorageLocation> created;

  auto rollback = [&] {
    std::lock_guard lock(state_mu_);
    for (const auto& loc : created) {
      if (!refcounts_.referents(FragmentKey::from_hex(loc.object_key)).empty()) continue;
      try {
        pcsp.remove(loc);
      } catch (const Error&) {
        log_event(pcsp.id(), "rollback could not remove " + loc.str());
      }
    }
  };

  try {
    for (std::size_t r = 0; r < req.items.size(); ++r) {
      const auto& item = req.items[r];
      SLoc sloc = item.known ? *item.known : broadcast_query(item.fragment.key(), req.csp_list);
      bool needs_store = false;
      if (item.storable) {
        needs_store = req.policy == StorePolicy::kPcspIfMissing
                          ? !sloc[0].has_value()
                          : std::none_of(sloc.begin(), sloc.end(),
                                         [](const auto& s) { return s.has_value(); });
      }
      if (needs_store) {
        StorageLocation loc;
        try {
          loc = pcsp.store(item.fragment);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kCspUnreachable) throw;
          throw Error(ErrorCode::kPcspUnreachable,
                      "primary CSP " + pcsp.id() + " became unreachable");
        }
        created.push_back(loc);
        sloc[0] = loc;
        ++result.store_calls;
        result.stored_rows.push_back(r);
      }
      result.table.rows.push_back({item.fragment.key(), std::move(sloc)});
    }
  } catch (...) {
    rollback();
    throw;
  }

  DocumentManifest manifest =
      req.manifest ? std::move(*req.manifest) : DocumentManifest::concatenate(req.object_id);
  manifest.object_id = req.object_id;

  std::lock_guard lock(state_mu_);
  refcounts_.reindex(nullptr, &result.table);
  tables_[req.object_id] = result.table;
  manifests_[req.object_id] = std::move(manifest);
  for (auto& f : req.local_fragments) local_store_.insert_or_assign(f.key(), std::move(f));
  return result;
}

bool Proxy::check_fragment(const std::optional<Fragment>& response, const FragmentKey& expected) {
  return response.has_value() && response->verifies_against(expected);
}

Fragment Proxy::reconstruct_fragment(std::span<const std::optional<Fragment>> responses,
                                     const FragmentKey& expected) {
  for (std::size_t i = 1; i < responses.size(); ++i)
    if (check_fragment(responses[i], expected)) return *responses[i];
  if (!responses.empty() && check_fragment(responses[0], expected)) return *responses[0];
  throw Error(ErrorCode::kUnrecoverable,
              "no CSP returned a fragment matching " + expected.hex());
}

std::vector<std::optional<Fragment>> Proxy::fetch_row(const LocationEntry& entry) const {
  return fan_out(fan_out_, entry.slots.size(), [&](std::size_t i) -> std::optional<Fragment> {
    const auto& slot = entry.slots[i];
    if (!slot) return std::nullopt;
    const CspStore* store = registry_.find(slot->csp_id);
    if (!store) {
      log_event(slot->csp_id, "fetch skipped: CSP not registered");
      return std::nullopt;
    }
    try {
      return store->fetch(*slot);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCspUnreachable) throw;
      log_event(slot->csp_id, "fetch unanswered: " + std::string(e.what()));
      return std::nullopt;
    }
  });
}

std::string Proxy::choose_new_pcsp(const std::optional<std::string>& exclude) const {
  const CspStore* best = nullptr;
  std::size_t best_size = 0;
  for (const auto& id : registry_.ids()) {
    if (exclude && id == *exclude) continue;
    const CspStore& s = registry_.get(id);
    if (!s.reachable()) continue;
    std::size_t size = s.size();
    if (!best || size < best_size || (size == best_size && s.id() < best->id())) {
      best = &s;
      best_size = size;
    }
  }
  if (!best) throw Error(ErrorCode::kNoNewPcsp, "no reachable CSP can act as new primary");
  return best->id();
}

RetrieveResult Proxy::retrieve(const std::string& object_id, const RetrieveOptions& options) {
  std::lock_guard object_lock(object_mutex(object_id));
  LocationTable table;
  DocumentManifest manifest;
  {
    std::lock_guard lock(state_mu_);
    auto it = tables_.find(object_id);
    if (it == tables_.end()) throw Error(ErrorCode::kUnknownObject, "unknown object " + object_id);
    table = it->second;
    manifest = manifests_.at(object_id);
  }

  RetrieveResult result;
  std::vector<Fragment> fragments;
  fragments.reserve(table.rows.size());
  bool dirty = false;

  auto commit = [&] {
    if (!dirty) return;
    std::lock_guard lock(state_mu_);
    tables_[object_id] = table;
  };

  try {
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      auto& entry = table.rows[r];
      auto responses = fetch_row(entry);
      if (check_fragment(responses[0], entry.fragment_key)) {
        fragments.push_back(*responses[0]);
        continue;
      }
      Fragment rebuilt = [&] {
        try {
          return reconstruct_fragment(responses, entry.fragment_key);
        } catch (const Error& e) {
          throw Error(ErrorCode::kUnrecoverable,
                      "row " + std::to_string(r) + " of " + object_id + ": " + e.what(), r);
        }
      }();
      const bool conflict = entry.slots[0].has_value();
      if (conflict || options.promote_third_party) {
        std::string old_pcsp = conflict ? entry.slots[0]->csp_id : table.csp_list.front();
        std::string target;
        if (options.new_pcsp) {
          if (conflict && *options.new_pcsp == old_pcsp)
            throw Error(ErrorCode::kInvalidArgument,
                        "rebuilt fragments must not return to the old primary " + old_pcsp);
          target = *options.new_pcsp;
        } else {
          target = choose_new_pcsp(old_pcsp);
        }
        StorageLocation loc = registry_.get(target).store(rebuilt);
        ++result.store_calls;
        result.repairs.push_back({r, entry.slots[0], loc});
        entry.slots[0] = loc;
        dirty = true;
      }
      fragments.push_back(std::move(rebuilt));
    }
  } catch (...) {
    commit();
    throw;
  }
  commit();
  result.data = manifest.reassemble(fragments);
  return result;
}

UpdateResult Proxy::update_fragment(const std::string& object_id, std::size_t row,
                                    const Payload& new_payload, const UpdateOptions& options) {
  std::lock_guard object_lock(object_mutex(object_id));
  LocationTable table;
  DocumentManifest manifest;
  {
    std::lock_guard lock(state_mu_);
    auto it = tables_.find(object_id);
    if (it == tables_.end()) throw Error(ErrorCode::kUnknownObject, "unknown object " + object_id);
    table = it->second;
    manifest = manifests_.at(object_id);
  }
  if (row >= table.rows.size())
    throw Error(ErrorCode::kBadRow,
                "object " + object_id + " has no row " + std::to_string(row), row);

  const bool is_terms = std::holds_alternative<TermSetPayload>(new_payload);
  if (manifest.mode == DocumentManifest::Mode::kTemplate) {
    if (!is_terms)
      throw Error(ErrorCode::kInvalidArgument, "template objects take term-set updates only");
  }
  Fragment fresh = Fragment::from_payload(
      new_payload, is_terms ? Sensitivity::kQuasiIdentifier : Sensitivity::kNonSensitive);
  if (auto bound = manifest.max_bound_index(row); bound && *bound >= fresh.terms().size())
    throw Error(ErrorCode::kInvalidArgument,
                "replacement has " + std::to_string(fresh.terms().size()) +
                    " terms but the document binds term " + std::to_string(*bound));
  if (options.validator) options.validator(fresh);

  const std::vector<std::string> csp_list = options.csp_list.value_or(table.csp_list);
  if (csp_list.empty()) throw Error(ErrorCode::kEmptyCspList, "update needs at least one CSP");
  if (csp_list.size() != table.width())
    throw Error(ErrorCode::kInvalidArgument, "update CSP list must match the table width");
  for (const auto& id : csp_list) registry_.get(id);
  auto& entry = table.rows[row];
  const FragmentKey old_key = entry.fragment_key;
  const std::optional<StorageLocation> old_slot0 = entry.slots[0];

  StorageLocation placed;
  if (options.approach == UpdateApproach::kInPlace) {
    std::set<std::string> referents;
    {
      std::lock_guard lock(state_mu_);
      referents = refcounts_.referents(old_key);
    }
    auto same_key_rows = std::count_if(table.rows.begin(), table.rows.end(),
                                       [&](const auto& e) { return e.fragment_key == old_key; });
    if (referents != std::set<std::string>{object_id} || same_key_rows > 1)
      throw Error(ErrorCode::kSharedFragment,
                  "fragment " + old_key.hex() + " is referenced by " +
                      std::to_string(referents.size()) + " objects; in-place update refused");
    if (old_slot0) {
      CspStore& pcsp = registry_.get(old_slot0->csp_id);
      if (!pcsp.reachable())
        throw Error(ErrorCode::kPcspUnreachable, "primary CSP " + pcsp.id() + " is unreachable");
      pcsp.remove(*old_slot0);
      placed = pcsp.store(fresh);
    } else {
      placed = registry_.get(csp_list.front()).store(fresh);
    }
  } else {
    std::string old_pcsp = old_slot0 ? old_slot0->csp_id : csp_list.front();
    std::string target = options.new_pcsp ? *options.new_pcsp : choose_new_pcsp(old_pcsp);
    placed = registry_.get(target).store(fresh);
  }

  SLoc refreshed = broadcast_query(fresh.key(), csp_list);
  refreshed[0] = placed;
  LocationTable before = table;
  entry.fragment_key = fresh.key();
  entry.slots = std::move(refreshed);

  std::lock_guard lock(state_mu_);
  refcounts_.reindex(&before, &table);
  tables_[object_id] = table;
  return {old_key, fresh.key(), placed};
}

ConflictReport Proxy::delete_fragment(const std::string& object_id, std::size_t row) {
  std::lock_guard object_lock(object_mutex(object_id));
  LocationTable table;
  DocumentManifest manifest;
  {
    std::lock_guard lock(state_mu_);
    auto it = tables_.find(object_id);
    if (it == tables_.end()) throw Error(ErrorCode::kUnknownObject, "unknown object " + object_id);
    table = it->second;
    manifest = manifests_.at(object_id);
  }
  if (row >= table.rows.size())
    throw Error(ErrorCode::kBadRow,
                "object " + object_id + " has no row " + std::to_string(row), row);
  const auto slot0 = table.rows[row].slots[0];
  if (!slot0)
    throw Error(ErrorCode::kBadRow,
                "row " + std::to_string(row) + " has no primary copy to delete", row);

  ConflictReport report;
  report.deleted = *slot0;
  report.removed = registry_.get(slot0->csp_id).remove(*slot0);

  LocationTable before = table;
  table.rows.erase(table.rows.begin() + static_cast<std::ptrdiff_t>(row));
  manifest.drop_row(row);

  std::lock_guard lock(state_mu_);
  tables_[object_id] = table;
  manifests_[object_id] = std::move(manifest);
  refcounts_.reindex(&before, &table);
  for (const auto& [id, t] : tables_) {
    for (const auto& e : t.rows)
      if (e.slots[0] && *e.slots[0] == *slot0) {
        report.conflicted.insert(id);
        break;
      }
  }
  return report;
}

bool Proxy::has_object(const std::string& object_id) const {
  std::lock_guard lock(state_mu_);
  return tables_.contains(object_id);
}

std::vector<std::string> Proxy::object_ids() const {
  std::lock_guard lock(state_mu_);
  std::vector<std::string> out;
  for (const auto& [id, t] : tables_) out.push_back(id);
  return out;
}

LocationTable Proxy::table(const std::string& object_id) const {
  std::lock_guard lock(state_mu_);
  auto it = tables_.find(object_id);
  if (it == tables_.end()) throw Error(ErrorCode::kUnknownObject, "unknown object " + object_id);
  return it->second;
}

DocumentManifest Proxy::manifest(const std::string& object_id) const {
  std::lock_guard lock(state_mu_);
  auto it = manifests_.find(object_id);
  if (it == manifests_.end())
    throw Error(ErrorCode::kUnknownObject, "unknown object " + object_id);
  return it->second;
}

std::map<std::string, LocationTable> Proxy::tables() const {
  std::lock_guard lock(state_mu_);
  return tables_;
}

RefCountIndex Proxy::refcounts() const {
  std::lock_guard lock(state_mu_);
  return refcounts_;
}

std::optional<Fragment> Proxy::local_fragment(const FragmentKey& key) const {
  std::lock_guard lock(state_mu_);
  auto it = local_store_.find(key);
  if (it == local_store_.end()) return std::nullopt;
  return it->second;
}

std::size_t Proxy::local_store_size() const {
  std::lock_guard lock(state_mu_);
  return local_store_.size();
}

bool Proxy::audit_refcounts() const {
  std::lock_guard lock(state_mu_);
  return RefCountIndex::rebuild(tables_) == refcounts_;
}

}  // namespace mcfrag
