#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "mcfrag/canonical.hpp"
#include "mcfrag/csp_store.hpp"

namespace mcfrag::test {

inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto p = std::filesystem::temp_directory_path() /
           ("mcfrag-" + tag + "-" + std::to_string(rng()));
  std::filesystem::create_directories(p);
  return p;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) : path(temp_dir(tag)) {}
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

inline CspRegistry make_registry(std::initializer_list<const char*> ids) {
  CspRegistry r;
  for (const char* id : ids) r.add(CspDescriptor::make(id, Tier::kPublic));
  return r;
}

inline std::string data_dir() { return MCFRAG_DATA_DIR; }

}  // namespace mcfrag::test
