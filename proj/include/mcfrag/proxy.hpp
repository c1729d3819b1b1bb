#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mcfrag/csp_store.hpp"
#include "mcfrag/fragment.hpp"
#include "mcfrag/location.hpp"
#include "mcfrag/manifest.hpp"

namespace mcfrag {

enum class StorePolicy {
  kPcspIfMissing,   // store at the PCSP whenever the PCSP answered None
  kSkipIfAnyFound,  // store at the PCSP only if no CSP answered
};
std::string_view to_string(StorePolicy p);
StorePolicy store_policy_from_string(std::string_view s);

enum class FanOut { kParallel, kSequential };

// One fragment handed to the outsourcing loop.
struct OutsourceItem {
  Fragment fragment;
  std::optional<SLoc> known;  // broadcast result already obtained by the caller
  bool storable = true;       // false: never placed at the PCSP
};

struct OutsourceRequest {
  std::string object_id;
  std::vector<OutsourceItem> items;
  std::vector<std::string> csp_list;
  StorePolicy policy = StorePolicy::kPcspIfMissing;
  std::optional<DocumentManifest> manifest;  // default: concatenate rows
  std::vector<Fragment> local_fragments;     // identifier fragments kept here
};

struct OutsourceResult {
  LocationTable table;
  std::size_t store_calls = 0;
  std::vector<std::size_t> stored_rows;
};

struct RepairRecord {
  std::size_t row = 0;
  std::optional<StorageLocation> old_slot0;
  StorageLocation new_slot0;
};

struct RetrieveOptions {
  std::optional<std::string> new_pcsp;
  // Also write rows that have no PCSP copy by policy to a PCSP.
  bool promote_third_party = false;
};

struct RetrieveResult {
  Bytes data;
  std::vector<RepairRecord> repairs;
  std::size_t store_calls = 0;
};

enum class UpdateApproach { kInPlace, kNewPcsp };
std::string_view to_string(UpdateApproach a);
UpdateApproach update_approach_from_string(std::string_view s);

// Throws kPolicyViolation when a replacement fragment breaks the owner's policy.
using FragmentValidator = std::function<void(const Fragment&)>;

struct UpdateOptions {
  UpdateApproach approach = UpdateApproach::kInPlace;
  std::optional<std::vector<std::string>> csp_list;  // default: the table's list
  std::optional<std::string> new_pcsp;              // kNewPcsp target override
  FragmentValidator validator;
};

struct UpdateResult {
  FragmentKey old_key;
  FragmentKey new_key;
  StorageLocation new_slot0;
};

struct ConflictReport {
  StorageLocation deleted;
  bool removed = false;           // the PCSP actually held the object
  std::set<std::string> conflicted;  // other objects whose slot 0 pointed there
};

struct ProxyEvent {
  std::string csp_id;
  std::string message;
};

// The trusted proxy. Holds location tables, manifests, the local identifier
// store and the reference index; talks to CSPs through `registry`, which must
// outlive it.
//
// Mutations of one object are serialised; operations on different objects
// may run concurrently. Broadcasts hit distinct CSPs in parallel and slot
// results by CSP index.
class Proxy {
 public:
  explicit Proxy(CspRegistry& registry, FanOut fan_out = FanOut::kParallel);
  Proxy(const Proxy&) = delete;
  Proxy& operator=(const Proxy&) = delete;

  CspRegistry& registry() noexcept { return registry_; }
  const CspRegistry& registry() const noexcept { return registry_; }

  // sLoc[i] answers for csp_list[i]. Unreachable CSPs answer None and are
  // logged as events.
  SLoc broadcast_query(const FragmentKey& key, std::span<const std::string> csp_list) const;

  // Broadcast, store where missing, and commit `fragments` atomically as `object_id`.
  LocationTable outsource(const std::string& object_id, std::span<const Fragment> fragments,
                          std::span<const std::string> csp_list, StorePolicy policy);
  OutsourceResult outsource(OutsourceRequest request);

  static bool check_fragment(const std::optional<Fragment>& response,
                             const FragmentKey& expected);
  // First response verifying against `expected`, scanning slots 1..n-1 then 0.
  static Fragment reconstruct_fragment(std::span<const std::optional<Fragment>> responses,
                                       const FragmentKey& expected);

  RetrieveResult retrieve(const std::string& object_id, const RetrieveOptions& options = {});

  UpdateResult update_fragment(const std::string& object_id, std::size_t row,
                               const Payload& new_payload, const UpdateOptions& options);

  ConflictReport delete_fragment(const std::string& object_id, std::size_t row);

  // Registered, reachable CSP with the fewest objects, excluding `exclude`;
  // ties broken by csp_id. Throws kNoNewPcsp.
  std::string choose_new_pcsp(const std::optional<std::string>& exclude) const;

  bool has_object(const std::string& object_id) const;
  std::vector<std::string> object_ids() const;
  LocationTable table(const std::string& object_id) const;
  DocumentManifest manifest(const std::string& object_id) const;
  std::map<std::string, LocationTable> tables() const;
  RefCountIndex refcounts() const;
  std::optional<Fragment> local_fragment(const FragmentKey& key) const;
  std::size_t local_store_size() const;
  // Rebuilds the reference index from the tables and compares.
  bool audit_refcounts() const;

  std::vector<ProxyEvent> events() const;
  void clear_events();

  // <dir>/tables.json, <dir>/manifests/<id>.json, <dir>/local_store/<key>.
  void save(const std::filesystem::path& dir) const;
  void load(const std::filesystem::path& dir);

 private:
  std::mutex& object_mutex(const std::string& object_id);
  std::vector<std::optional<Fragment>> fetch_row(const LocationEntry& entry) const;
  void log_event(const std::string& csp_id, const std::string& message) const;

  CspRegistry& registry_;
  FanOut fan_out_;

  mutable std::mutex state_mu_;
  std::map<std::string, LocationTable> tables_;
  std::map<std::string, DocumentManifest> manifests_;
  std::map<FragmentKey, Fragment> local_store_;
  RefCountIndex refcounts_;
  std::map<std::string, std::unique_ptr<std::mutex>> object_mu_;

  mutable std::mutex events_mu_;
  mutable std::vector<ProxyEvent> events_;
};

}  // namespace mcfrag
