#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "mcfrag/fragment.hpp"
#include "mcfrag/location.hpp"

namespace mcfrag {

struct FaultMode {
  enum class Kind { kMissing, kCorrupted };
  Kind kind = Kind::kMissing;
  std::size_t position = 0;  // byte flipped (mod payload size) for kCorrupted

  static FaultMode missing() { return {Kind::kMissing, 0}; }
  static FaultMode corrupted(std::size_t pos) { return {Kind::kCorrupted, pos}; }
  friend bool operator==(const FaultMode&, const FaultMode&) = default;
};

struct CspCounters {
  std::size_t queries = 0;
  std::size_t stores = 0;  // csp_store invocations
  std::size_t writes = 0;  // stores that created or rewrote an object
  std::size_t fetches = 0;
  std::size_t removes = 0;
};

// A simulated cloud storage provider. Objects are keyed by the fragment key,
// so a location's object_key is the key's hex digest.
//
// Reads take a shared lock; store/remove/inject serialise on an exclusive one.
// Every protocol call throws kCspUnreachable while the CSP is offline.
class CspStore {
 public:
  explicit CspStore(CspDescriptor descriptor);
  CspStore(const CspStore& other);
  CspStore& operator=(const CspStore& other);

  const CspDescriptor& descriptor() const noexcept { return descriptor_; }
  const std::string& id() const noexcept { return descriptor_.csp_id; }

  std::optional<StorageLocation> query(const FragmentKey& key) const;
  // Idempotent per key. Rewrites (and clears the fault on) a faulted object.
  StorageLocation store(const Fragment& fragment);
  std::optional<Fragment> fetch(const StorageLocation& loc) const;
  bool remove(const StorageLocation& loc);

  // Administrative controls; these ignore reachability.
  void inject_fault(const StorageLocation& loc, FaultMode mode);
  void clear_fault(const StorageLocation& loc);
  void set_reachable(bool reachable);
  bool reachable() const;

  // Objects currently answering queries (not Missing).
  std::size_t size() const;
  std::vector<StorageLocation> locations() const;
  std::map<std::string, FaultMode> faults() const;

  CspCounters counters() const;
  void reset_counters();

  // Writes <root>/<csp_id>/fragments/<key> and <root>/<csp_id>/meta.json.
  void save(const std::filesystem::path& root) const;
  static CspStore load(const std::filesystem::path& csp_dir);

 private:
  void require_reachable() const;
  bool owns(const StorageLocation& loc) const;

  CspDescriptor descriptor_;
  mutable std::shared_mutex mu_;
  std::map<std::string, Fragment> objects_;
  std::map<std::string, FaultMode> faults_;
  bool reachable_ = true;

  mutable std::atomic<std::size_t> queries_{0};
  std::atomic<std::size_t> stores_{0};
  std::atomic<std::size_t> writes_{0};
  mutable std::atomic<std::size_t> fetches_{0};
  std::atomic<std::size_t> removes_{0};
};

// Ordered set of CSPs known to the proxy.
class CspRegistry {
 public:
  CspStore& add(CspStore store);
  CspStore& add(CspDescriptor descriptor) { return add(CspStore(std::move(descriptor))); }

  CspStore* find(std::string_view id) noexcept;
  const CspStore* find(std::string_view id) const noexcept;
  // Throws kUnknownCsp.
  CspStore& get(std::string_view id);
  const CspStore& get(std::string_view id) const;

  std::vector<std::string> ids() const;
  std::size_t size() const noexcept { return stores_.size(); }

  CspCounters total_counters() const;
  void reset_counters();

  // Deep copy of every store, including contents and faults.
  CspRegistry clone() const;

  // <root>/registry.json lists the order; each CSP lives at <root>/<id>/.
  void save(const std::filesystem::path& root) const;
  static CspRegistry load(const std::filesystem::path& root);

 private:
  std::vector<std::unique_ptr<CspStore>> stores_;
};

}  // namespace mcfrag
