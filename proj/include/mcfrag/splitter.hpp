#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcfrag/allocation.hpp"
#include "mcfrag/corpus.hpp"
#include "mcfrag/disclosure.hpp"
#include "mcfrag/manifest.hpp"
#include "mcfrag/proxy.hpp"
#include "vendor_json.hpp"

namespace mcfrag {

struct SplitMetrics {
  std::size_t frag = 0;  // fragments created by allocation
  std::size_t id = 0;    // identifiers kept locally
  std::size_t qid = 0;   // quasi-identifiers allocated
  std::size_t et = 0;    // terms answered positively by the multi-cloud
  std::size_t extracted = 0;
  std::size_t identifiers_total = 0;
  std::size_t quasi_total = 0;
  std::size_t safe = 0;
  std::size_t constraint_evaluations = 0;
  std::size_t store_calls = 0;
  std::size_t queries = 0;
  double time_ms = 0.0;

  // Deterministic operation-count cost: allocation checks plus stores.
  std::size_t op_cost() const noexcept { return constraint_evaluations + store_calls; }
};

struct ThirdPartyTerm {
  std::string term;
  TermClass cls = TermClass::kSafe;
  std::size_t row = 0;
  SLoc sloc;
};

struct SplitPlan {
  std::string object_id;
  std::vector<TermAssessment> assessments;
  std::vector<ThirdPartyTerm> third_party;
  std::vector<std::string> local_identifiers;
  std::vector<Fragment> fragments;
  DocumentManifest manifest;
  LocationTable table;
  SplitMetrics metrics;
};

struct SplitRequest {
  std::string object_id;
  std::string_view document;
  PrivacyPolicy policy;
  std::vector<std::string> csp_list;
  Strategy strategy = Strategy::kUnordered;
  StorePolicy store_policy = StorePolicy::kSkipIfAnyFound;
  bool reuse = true;  // false: the baseline splitter, no broadcast queries
};

// extract -> classify -> per-term broadcast -> allocate leftovers ->
// outsource. Commits the object into `proxy` on success.
SplitPlan split_with_reuse(Proxy& proxy, const CorpusStats& stats, const SplitRequest& request);
SplitPlan split_baseline(Proxy& proxy, const CorpusStats& stats, SplitRequest request);

nlohmann::json to_json(const SplitPlan& plan);

// Policy file: {"protected": [...], "risk_cap": 1.0, "strategy": "unordered",
//               "store_policy": "skip-if-any-found", "corpus": "<dir>"}
struct PolicyFile {
  PrivacyPolicy policy;
  Strategy strategy = Strategy::kUnordered;
  StorePolicy store_policy = StorePolicy::kSkipIfAnyFound;
  std::optional<std::filesystem::path> corpus;
};
PolicyFile parse_policy_file(const nlohmann::json& j);
PolicyFile load_policy_file(const std::filesystem::path& path);

// Rejects TermSet fragments holding an identifier or reaching the cap.
FragmentValidator make_policy_validator(PrivacyPolicy policy, const CorpusStats& stats);

}  // namespace mcfrag
