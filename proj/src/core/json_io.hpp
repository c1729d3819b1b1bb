#pragma once

#include <filesystem>
#include <optional>

#include "mcfrag/location.hpp"
#include "mcfrag/manifest.hpp"
#include "mcfrag/vendor_json.hpp"

namespace mcfrag::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const CspDescriptor& d);
CspDescriptor descriptor_from_json(const json& j);

json to_json(const std::optional<StorageLocation>& loc);
std::optional<StorageLocation> location_from_json(const json& j);

json to_json(const SLoc& sloc);
SLoc sloc_from_json(const json& j);

json to_json(const LocationTable& t);
LocationTable table_from_json(const json& j);

json to_json(const DocumentManifest& m);
DocumentManifest manifest_from_json(const json& j);

// Throws kCorruptMetadata unless j["schema"] == 1.
void require_schema(const json& j, const std::string& what);

Bytes read_file(const std::filesystem::path& p);
json read_json(const std::filesystem::path& p);
// Write to a sibling temp file and rename over `p`.
void write_file(const std::filesystem::path& p, std::span<const std::uint8_t> data);
void write_json(const std::filesystem::path& p, const json& j);

}  // namespace mcfrag::io
