#include "core/json_io.hpp"

#include <fstream>
#include <iterator>

#include "mcfrag/error.hpp"

namespace mcfrag::io {

json to_json(const CspDescriptor& d) {
  return {{"csp_id", d.csp_id}, {"tier", to_string(d.tier)}, {"trust", to_string(d.trust)}};
}

CspDescriptor descriptor_from_json(const json& j) {
  CspDescriptor d{j.at("csp_id").get<std::string>(),
                  tier_from_string(j.at("tier").get<std::string>()),
                  trust_from_string(j.at("trust").get<std::string>())};
  d.validate();
  return d;
}

json to_json(const std::optional<StorageLocation>& loc) {
  if (!loc) return nullptr;
  return {{"csp_id", loc->csp_id}, {"object_key", loc->object_key}};
}

std::optional<StorageLocation> location_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return StorageLocation{j.at("csp_id").get<std::string>(), j.at("object_key").get<std::string>()};
}

json to_json(const SLoc& sloc) {
  json arr = json::array();
  for (const auto& s : sloc) arr.push_back(to_json(s));
  return arr;
}

SLoc sloc_from_json(const json& j) {
  SLoc out;
  for (const auto& s : j) out.push_back(location_from_json(s));
  return out;
}

json to_json(const LocationTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"fragment_key", r.fragment_key.hex()}, {"slots", to_json(r.slots)}});
  return {{"object_id", t.object_id}, {"csp_list", t.csp_list}, {"rows", rows}};
}

LocationTable table_from_json(const json& j) {
  LocationTable t;
  t.object_id = j.at("object_id").get<std::string>();
  t.csp_list = j.at("csp_list").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows"))
    t.rows.push_back({FragmentKey::from_hex(r.at("fragment_key").get<std::string>()),
                      sloc_from_json(r.at("slots"))});
  t.validate();
  return t;
}

json to_json(const DocumentManifest& m) {
  json bindings = json::array();
  for (const auto& b : m.bindings) {
    json jb;
    if (b.source == Binding::Source::kLocal) {
      jb["source"] = "local";
    } else {
      jb["source"] = "fragment";
      jb["row"] = b.row;
    }
    jb["index"] = b.index;
    if (!b.upper.empty()) jb["upper"] = b.upper;
    if (b.surface) jb["surface"] = *b.surface;
    bindings.push_back(std::move(jb));
  }
  return {{"schema", kSchemaVersion},
          {"object_id", m.object_id},
          {"mode", m.mode == DocumentManifest::Mode::kTemplate ? "template" : "concatenate"},
          {"template", m.template_text},
          {"bindings", bindings},
          {"local_identifiers", m.local_identifiers}};
}

DocumentManifest manifest_from_json(const json& j) {
  require_schema(j, "manifest");
  DocumentManifest m;
  m.object_id = j.at("object_id").get<std::string>();
  auto mode = j.at("mode").get<std::string>();
  if (mode == "template") m.mode = DocumentManifest::Mode::kTemplate;
  else if (mode == "concatenate") m.mode = DocumentManifest::Mode::kConcatenate;
  else throw Error(ErrorCode::kCorruptMetadata, "unknown manifest mode " + mode);
  m.template_text = j.at("template").get<std::string>();
  m.local_identifiers = j.at("local_identifiers").get<std::vector<std::string>>();
  for (const auto& jb : j.at("bindings")) {
    Binding b;
    b.source = jb.at("source").get<std::string>() == "local" ? Binding::Source::kLocal
                                                            : Binding::Source::kFragment;
    if (b.source == Binding::Source::kFragment) b.row = jb.at("row").get<std::size_t>();
    b.index = jb.at("index").get<std::size_t>();
    if (jb.contains("upper")) b.upper = jb["upper"].get<std::vector<std::size_t>>();
    if (jb.contains("surface")) b.surface = jb["surface"].get<std::string>();
    m.bindings.push_back(std::move(b));
  }
  return m;
}

void require_schema(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != kSchemaVersion)
    throw Error(ErrorCode::kCorruptMetadata, what + ": missing or unsupported schema version");
}

Bytes read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + p.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

json read_json(const std::filesystem::path& p) {
  auto bytes = read_file(p);
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptMetadata, p.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& p, std::span<const std::uint8_t> data) {
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename " + tmp.string() + ": " + ec.message());
}

void write_json(const std::filesystem::path& p, const json& j) {
  std::string s = j.dump(2);
  s.push_back('\n');
  write_file(p, to_bytes(s));
}

}  // namespace mcfrag::io
