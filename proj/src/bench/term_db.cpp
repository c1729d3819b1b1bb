#include <algorithm>
#include <cmath>
#include <set>

#include "mcfrag/bench.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/rake.hpp"

namespace mcfrag {

std::vector<std::string> TermDatabase::seeded_terms() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < seeded; ++i) out.push_back(ranked[i].first);
  return out;
}

void TermDatabase::seed(std::span<CspStore* const> secondaries) const {
  if (seeded == 0) return;
  if (secondaries.empty())
    throw Error(ErrorCode::kInvalidArgument, "term database needs at least one secondary CSP");
  for (std::size_t i = 0; i < seeded; ++i) {
    const std::vector<std::string> one{ranked[i].first};
    secondaries[i % secondaries.size()]->store(
        Fragment::term_set(one, Sensitivity::kNonSensitive));
  }
}

TermDatabase build_term_db(const Corpus& corpus, double coverage) {
  if (!(coverage >= 0.0 && coverage <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "coverage must lie in [0, 1]");
  std::set<std::string> terms;
  for (const auto& p : corpus.paragraphs)
    for (auto& t : extract_terms(p)) terms.insert(std::move(t.text));

  TermDatabase db;
  db.ranked.reserve(terms.size());
  for (const auto& t : terms) db.ranked.emplace_back(t, corpus.stats.doc_freq(t));
  std::stable_sort(db.ranked.begin(), db.ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  db.seeded = static_cast<std::size_t>(
      std::floor(coverage * static_cast<double>(db.ranked.size()) + 1e-9));
  db.seeded = std::min(db.seeded, db.ranked.size());
  return db;
}

}  // namespace mcfrag
