#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcfrag/allocation.hpp"
#include "mcfrag/corpus.hpp"
#include "mcfrag/csp_store.hpp"
#include "mcfrag/disclosure.hpp"
#include "mcfrag/proxy.hpp"
#include "vendor_json.hpp"

namespace mcfrag {

struct PackingOptions {
  std::size_t target = 1024;
  std::size_t slack = 256;
  std::size_t lower() const noexcept { return target - slack; }
  std::size_t upper() const noexcept { return target + slack; }
};

struct Corpus {
  std::vector<std::string> paragraphs;
  std::vector<std::string> sources;  // file each paragraph came from
  CorpusStats stats;
};

// Packs one file's text into ~1KB paragraphs. Blank lines separate source
// paragraphs; short ones merge forward, long ones split between sentences.
std::vector<std::string> pack_paragraphs(std::string_view text, const PackingOptions& opts = {});

// Every regular file under `dir` (sorted by path). Throws kEmptyCorpus.
Corpus ingest_corpus(const std::filesystem::path& dir, const PackingOptions& opts = {});
Corpus make_corpus(std::vector<std::string> paragraphs);

struct TermDatabase {
  std::vector<std::pair<std::string, std::size_t>> ranked;  // term, df
  std::size_t seeded = 0;  // leading entries of `ranked` that are seeded

  std::vector<std::string> seeded_terms() const;
  // One-term TermSet fragments, round-robin over `secondaries` in seed order.
  void seed(std::span<CspStore* const> secondaries) const;
};

// Terms extracted across the corpus ranked by df descending, then
// lexicographically; the top floor(coverage * count) are seeded.
TermDatabase build_term_db(const Corpus& corpus, double coverage);

enum class Solution { kBaseline, kFramework };
std::string_view to_string(Solution s);

struct MetricRow {
  Solution solution = Solution::kBaseline;
  Strategy strategy = Strategy::kUnordered;
  std::optional<double> coverage;  // Framework only
  double frag = 0, id = 0, qid = 0;
  std::optional<double> et;        // Framework only
  double op_cost = 0;
  double sim_cost = 0;
  double time_ms = 0;
  std::size_t documents = 0;
  std::size_t failures = 0;
};

// Simulated splitting cost: queries are priced below allocation checks.
struct CostModel {
  double constraint_evaluation = 1.0;
  double store = 1.0;
  double query = 0.1;
};

struct BenchConfig {
  PrivacyPolicy policy;
  std::vector<Strategy> strategies{Strategy::kUnordered, Strategy::kOrderedDesc};
  std::vector<double> coverages{0.3};
  StorePolicy store_policy = StorePolicy::kSkipIfAnyFound;
  std::size_t secondaries = 3;
  std::optional<std::size_t> sample;  // random subset of paragraphs
  std::uint64_t seed = 0;
  CostModel cost;
};

struct DocumentFailure {
  std::size_t paragraph = 0;
  std::string error;
};

struct BenchReport {
  std::vector<MetricRow> rows;
  std::vector<DocumentFailure> failures;
  std::size_t documents = 0;

  const MetricRow* find(Solution s, Strategy st, std::optional<double> coverage = {}) const;
  nlohmann::json json() const;
  std::string text() const;
};

BenchReport run_benchmark(const Corpus& corpus, const BenchConfig& config);

// Paragraph indices the benchmark would evaluate under `config`.
std::vector<std::size_t> select_paragraphs(std::size_t count, const BenchConfig& config);

}  // namespace mcfrag
