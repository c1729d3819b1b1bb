#include <filesystem>

#include "core/json_io.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/proxy.hpp"

namespace mcfrag {

namespace fs = std::filesystem;

void Proxy::save(const fs::path& dir) const {
  std::lock_guard lock(state_mu_);
  fs::create_directories(dir / "manifests");
  fs::create_directories(dir / "local_store");

  io::json tables = io::json::array();
  for (const auto& [id, t] : tables_) tables.push_back(io::to_json(t));
  io::write_json(dir / "tables.json", {{"schema", io::kSchemaVersion}, {"tables", tables}});

  for (const auto& [id, m] : manifests_) io::write_json(dir / "manifests" / (id + ".json"), io::to_json(m));
  for (const auto& entry : fs::directory_iterator(dir / "manifests")) {
    auto stem = entry.path().stem().string();
    if (entry.path().extension() == ".json" && !manifests_.contains(stem)) fs::remove(entry.path());
  }

  io::json index = io::json::object();
  for (const auto& [key, f] : local_store_) {
    index[key.hex()] = {{"kind", to_string(f.kind())}, {"sensitivity", to_string(f.sensitivity())}};
    io::write_file(dir / "local_store" / key.hex(), f.bytes());
  }
  for (const auto& entry : fs::directory_iterator(dir / "local_store")) {
    auto name = entry.path().filename().string();
    if (name != "index.json" && !index.contains(name)) fs::remove(entry.path());
  }
  io::write_json(dir / "local_store" / "index.json",
                 {{"schema", io::kSchemaVersion}, {"fragments", index}});
}

void Proxy::load(const fs::path& dir) {
  std::map<std::string, LocationTable> tables;
  std::map<std::string, DocumentManifest> manifests;
  std::map<FragmentKey, Fragment> local;
  if (fs::exists(dir / "tables.json")) {
    auto j = io::read_json(dir / "tables.json");
    io::require_schema(j, "tables.json");
    try {
      for (const auto& jt : j.at("tables")) {
        auto t = io::table_from_json(jt);
        auto m = io::manifest_from_json(io::read_json(dir / "manifests" / (t.object_id + ".json")));
        manifests.emplace(t.object_id, std::move(m));
        tables.emplace(t.object_id, std::move(t));
      }
      if (fs::exists(dir / "local_store" / "index.json")) {
        auto idx = io::read_json(dir / "local_store" / "index.json");
        io::require_schema(idx, "local_store/index.json");
        for (const auto& [hex, info] : idx.at("fragments").items()) {
          auto key = FragmentKey::from_hex(hex);
          local.emplace(key, Fragment::from_stored(
                                 key, fragment_kind_from_string(info.at("kind").get<std::string>()),
                                 io::read_file(dir / "local_store" / hex),
                                 sensitivity_from_string(info.at("sensitivity").get<std::string>())));
        }
      }
    } catch (const io::json::exception& e) {
      throw Error(ErrorCode::kCorruptMetadata, dir.string() + ": " + e.what());
    }
  }
  std::lock_guard lock(state_mu_);
  tables_ = std::move(tables);
  manifests_ = std::move(manifests);
  local_store_ = std::move(local);
  refcounts_ = RefCountIndex::rebuild(tables_);
}

}  // namespace mcfrag
