#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcfrag {

// Paragraph-level document frequencies. A term (possibly multi-word) occurs
// in a paragraph when its canonical words appear there contiguously.
//
// Immutable once built; lookups are safe from many threads.
class CorpusStats {
 public:
  using PairCounts = std::map<std::pair<std::string, std::string>, std::size_t>;

  static CorpusStats from_paragraphs(std::span<const std::string> paragraphs);
  // Explicit counts; terms absent from `df` have frequency 0.
  static CorpusStats from_counts(std::size_t paragraph_count,
                                 std::map<std::string, std::size_t> df, PairCounts codf);

  std::size_t paragraph_count() const noexcept { return n_; }
  std::size_t doc_freq(std::string_view term) const;
  std::size_t co_doc_freq(std::string_view term, std::string_view entity) const;

 private:
  std::vector<std::size_t> occurrences(std::string_view term) const;

  std::size_t n_ = 0;
  bool indexed_ = false;
  std::map<std::string, std::size_t, std::less<>> df_;
  PairCounts codf_;
  std::vector<std::vector<std::string>> words_;  // per paragraph
  std::map<std::string, std::vector<std::size_t>, std::less<>> postings_;
};

}  // namespace mcfrag
