#include "mcfrag/csp_store.hpp"

#include <mutex>

#include "core/json_io.hpp"
#include "mcfrag/error.hpp"

namespace mcfrag {

namespace fs = std::filesystem;

CspStore::CspStore(CspDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  descriptor_.validate();
}

CspStore::CspStore(const CspStore& other) { *this = other; }

CspStore& CspStore::operator=(const CspStore& other) {
  if (this == &other) return *this;
  std::shared_lock theirs(other.mu_);
  std::unique_lock mine(mu_);
  descriptor_ = other.descriptor_;
  objects_ = other.objects_;
  faults_ = other.faults_;
  reachable_ = other.reachable_;
  queries_ = other.queries_.load();
  stores_ = other.stores_.load();
  writes_ = other.writes_.load();
  fetches_ = other.fetches_.load();
  removes_ = other.removes_.load();
  return *this;
}

void CspStore::require_reachable() const {
  if (!reachable_)
    throw Error(ErrorCode::kCspUnreachable, "CSP " + descriptor_.csp_id + " is unreachable");
}

bool CspStore::owns(const StorageLocation& loc) const {
  return loc.csp_id == descriptor_.csp_id;
}

std::optional<StorageLocation> CspStore::query(const FragmentKey& key) const {
  std::shared_lock lock(mu_);
  require_reachable();
  ++queries_;
  auto it = objects_.find(key.hex());
  if (it == objects_.end()) return std::nullopt;
  auto fault = faults_.find(key.hex());
  if (fault != faults_.end() && fault->second.kind == FaultMode::Kind::kMissing)
    return std::nullopt;
  return StorageLocation{descriptor_.csp_id, key.hex()};
}

StorageLocation CspStore::store(const Fragment& fragment) {
  if (!fragment.self_verifies())
    throw Error(ErrorCode::kSelfCheckFailed,
                "fragment " + fragment.key().hex() + " does not match its payload");
  std::unique_lock lock(mu_);
  require_reachable();
  ++stores_;
  const auto& hex = fragment.key().hex();
  auto fault = faults_.find(hex);
  auto it = objects_.find(hex);
  if (it == objects_.end() || fault != faults_.end()) {
    objects_.insert_or_assign(hex, fragment);
    if (fault != faults_.end()) faults_.erase(fault);
    ++writes_;
  }
  return StorageLocation{descriptor_.csp_id, hex};
}

std::optional<Fragment> CspStore::fetch(const StorageLocation& loc) const {
  std::shared_lock lock(mu_);
  require_reachable();
  ++fetches_;
  if (!owns(loc)) return std::nullopt;
  auto it = objects_.find(loc.object_key);
  if (it == objects_.end()) return std::nullopt;
  auto fault = faults_.find(loc.object_key);
  if (fault == faults_.end()) return it->second;
  if (fault->second.kind == FaultMode::Kind::kMissing) return std::nullopt;
  Bytes bytes = it->second.bytes();
  if (bytes.empty())
    bytes.push_back(0xFF);
  else
    bytes[fault->second.position % bytes.size()] ^= 0xFF;
  return Fragment::from_stored(it->second.key(), it->second.kind(), std::move(bytes),
                               it->second.sensitivity());
}

bool CspStore::remove(const StorageLocation& loc) {
  std::unique_lock lock(mu_);
  require_reachable();
  ++removes_;
  if (!owns(loc)) return false;
  auto it = objects_.find(loc.object_key);
  if (it == objects_.end()) return false;
  bool visible = true;
  auto fault = faults_.find(loc.object_key);
  if (fault != faults_.end()) {
    visible = fault->second.kind != FaultMode::Kind::kMissing;
    faults_.erase(fault);
  }
  objects_.erase(it);
  return visible;
}

void CspStore::inject_fault(const StorageLocation& loc, FaultMode mode) {
  std::unique_lock lock(mu_);
  if (!owns(loc) || !objects_.contains(loc.object_key))
    throw Error(ErrorCode::kUnknownLocation, "no object at " + loc.str());
  faults_.insert_or_assign(loc.object_key, mode);
}

void CspStore::clear_fault(const StorageLocation& loc) {
  std::unique_lock lock(mu_);
  faults_.erase(loc.object_key);
}

void CspStore::set_reachable(bool reachable) {
  std::unique_lock lock(mu_);
  reachable_ = reachable;
}

bool CspStore::reachable() const {
  std::shared_lock lock(mu_);
  return reachable_;
}

std::size_t CspStore::size() const {
  std::shared_lock lock(mu_);
  std::size_t missing = 0;
  for (const auto& [key, f] : faults_)
    if (f.kind == FaultMode::Kind::kMissing) ++missing;
  return objects_.size() - missing;
}

std::vector<StorageLocation> CspStore::locations() const {
  std::shared_lock lock(mu_);
  std::vector<StorageLocation> out;
  out.reserve(objects_.size());
  for (const auto& [key, f] : objects_) out.push_back({descriptor_.csp_id, key});
  return out;
}

std::map<std::string, FaultMode> CspStore::faults() const {
  std::shared_lock lock(mu_);
  return faults_;
}

CspCounters CspStore::counters() const {
  return {queries_.load(), stores_.load(), writes_.load(), fetches_.load(), removes_.load()};
}

void CspStore::reset_counters() {
  queries_ = 0;
  stores_ = 0;
  writes_ = 0;
  fetches_ = 0;
  removes_ = 0;
}

void CspStore::save(const fs::path& root) const {
  std::shared_lock lock(mu_);
  const fs::path dir = root / descriptor_.csp_id;
  const fs::path frag_dir = dir / "fragments";
  fs::create_directories(frag_dir);

  io::json objects = io::json::object();
  for (const auto& [key, f] : objects_) {
    objects[key] = {{"kind", to_string(f.kind())}, {"sensitivity", to_string(f.sensitivity())}};
    const fs::path p = frag_dir / key;
    std::error_code ec;
    bool same = fs::exists(p, ec) && fs::file_size(p, ec) == f.bytes().size() &&
                io::read_file(p) == f.bytes();
    if (!same) io::write_file(p, f.bytes());
  }
  for (const auto& entry : fs::directory_iterator(frag_dir)) {
    if (!objects_.contains(entry.path().filename().string())) fs::remove(entry.path());
  }
  io::json faults = io::json::object();
  for (const auto& [key, f] : faults_) {
    if (f.kind == FaultMode::Kind::kMissing)
      faults[key] = {{"mode", "missing"}};
    else
      faults[key] = {{"mode", "corrupted"}, {"position", f.position}};
  }
  io::write_json(dir / "meta.json", {{"schema", io::kSchemaVersion},
                                     {"descriptor", io::to_json(descriptor_)},
                                     {"reachable", reachable_},
                                     {"objects", objects},
                                     {"faults", faults}});
}

CspStore CspStore::load(const fs::path& csp_dir) {
  auto meta = io::read_json(csp_dir / "meta.json");
  io::require_schema(meta, (csp_dir / "meta.json").string());
  try {
    CspStore store(io::descriptor_from_json(meta.at("descriptor")));
    if (csp_dir.filename() != store.id())
      throw Error(ErrorCode::kCorruptMetadata,
                  "CSP directory " + csp_dir.string() + " holds descriptor " + store.id());
    store.reachable_ = meta.at("reachable").get<bool>();
    for (const auto& [key, info] : meta.at("objects").items()) {
      auto fk = FragmentKey::from_hex(key);
      Bytes bytes = io::read_file(csp_dir / "fragments" / key);
      store.objects_.emplace(
          key, Fragment::from_stored(fk, fragment_kind_from_string(info.at("kind").get<std::string>()),
                                     std::move(bytes),
                                     sensitivity_from_string(info.at("sensitivity").get<std::string>())));
    }
    for (const auto& [key, info] : meta.at("faults").items()) {
      auto mode = info.at("mode").get<std::string>();
      if (mode == "missing")
        store.faults_[key] = FaultMode::missing();
      else if (mode == "corrupted")
        store.faults_[key] = FaultMode::corrupted(info.at("position").get<std::size_t>());
      else
        throw Error(ErrorCode::kCorruptMetadata, "unknown fault mode " + mode);
    }
    return store;
  } catch (const io::json::exception& e) {
    throw Error(ErrorCode::kCorruptMetadata, csp_dir.string() + ": " + e.what());
  }
}

}  // namespace mcfrag
