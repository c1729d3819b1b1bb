#include "mcfrag/corpus.hpp"

#include <algorithm>

#include "mcfrag/rake.hpp"

namespace mcfrag {
namespace {

std::vector<std::string> split_words(std::string_view term) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= term.size()) {
    auto sp = term.find(' ', pos);
    if (sp == std::string_view::npos) sp = term.size();
    if (sp > pos) out.emplace_back(term.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return out;
}

bool contains_run(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  if (needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

CorpusStats CorpusStats::from_paragraphs(std::span<const std::string> paragraphs) {
  CorpusStats s;
  s.n_ = paragraphs.size();
  s.indexed_ = true;
  s.words_.reserve(paragraphs.size());
  for (std::size_t p = 0; p < paragraphs.size(); ++p) {
    s.words_.push_back(tokenize_words(paragraphs[p]));
    for (const auto& w : s.words_.back()) {
      auto& post = s.postings_[w];
      if (post.empty() || post.back() != p) post.push_back(p);
    }
  }
  return s;
}

CorpusStats CorpusStats::from_counts(std::size_t paragraph_count,
                                     std::map<std::string, std::size_t> df, PairCounts codf) {
  CorpusStats s;
  s.n_ = paragraph_count;
  for (auto& [k, v] : df) s.df_.emplace(k, v);
  s.codf_ = std::move(codf);
  return s;
}

std::vector<std::size_t> CorpusStats::occurrences(std::string_view term) const {
  auto words = split_words(term);
  if (words.empty()) return {};
  std::vector<std::size_t> candidates;
  bool first = true;
  for (const auto& w : words) {
    auto it = postings_.find(w);
    if (it == postings_.end()) return {};
    if (first) {
      candidates = it->second;
      first = false;
    } else {
      std::vector<std::size_t> merged;
      std::set_intersection(candidates.begin(), candidates.end(), it->second.begin(),
                            it->second.end(), std::back_inserter(merged));
      candidates = std::move(merged);
    }
    if (candidates.empty()) return {};
  }
  if (words.size() == 1) return candidates;
  std::vector<std::size_t> out;
  for (auto p : candidates)
    if (contains_run(words_[p], words)) out.push_back(p);
  return out;
}

std::size_t CorpusStats::doc_freq(std::string_view term) const {
  if (auto it = df_.find(term); it != df_.end()) return it->second;
  if (!indexed_) return 0;
  return occurrences(term).size();
}

std::size_t CorpusStats::co_doc_freq(std::string_view term, std::string_view entity) const {
  if (auto it = codf_.find({std::string(term), std::string(entity)}); it != codf_.end())
    return it->second;
  if (!indexed_) return 0;
  auto a = occurrences(term);
  auto b = occurrences(entity);
  std::vector<std::size_t> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return both.size();
}

}  // namespace mcfrag
