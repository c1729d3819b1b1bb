#include "mcfrag/rake.hpp"

#include <map>

#include "mcfrag/canonical.hpp"

namespace mcfrag {
namespace {

struct WordToken {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool break_before = false;  // punctuation or a line break since the previous word
};

enum class ByteClass { kWord, kSpace, kDelimiter };

// Multi-byte punctuation treated as delimiters: curly quotes, dashes,
// ellipsis, guillemets, no-break space.
std::size_t utf8_punct_length(std::string_view t, std::size_t i) {
  static constexpr std::string_view kPunct[] = {
      "\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x98", "\xE2\x80\x99", "\xE2\x80\x93",
      "\xE2\x80\x94", "\xE2\x80\xA6", "\xC2\xAB",     "\xC2\xBB",     "\xC2\xA0"};
  for (auto p : kPunct)
    if (t.substr(i, p.size()) == p) return p.size();
  return 0;
}

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool starts_word(std::string_view t, std::size_t i) {
  if (i >= t.size()) return false;
  auto c = static_cast<unsigned char>(t[i]);
  if (is_ascii_alnum(c)) return true;
  return c >= 0x80 && utf8_punct_length(t, i) == 0;
}

std::vector<WordToken> scan_words(std::string_view t) {
  std::vector<WordToken> out;
  bool pending_break = false;
  std::size_t i = 0;
  while (i < t.size()) {
    auto c = static_cast<unsigned char>(t[i]);
    if (starts_word(t, i)) {
      WordToken w{i, i, pending_break};
      while (i < t.size()) {
        if (starts_word(t, i)) {
          ++i;
          // Continuation bytes of a multi-byte sequence.
          while (i < t.size() && (static_cast<unsigned char>(t[i]) & 0xC0) == 0x80) ++i;
          continue;
        }
        char d = t[i];
        if ((d == '\'' || d == '-') && starts_word(t, i + 1)) {
          ++i;
          continue;
        }
        break;
      }
      w.end = i;
      out.push_back(w);
      pending_break = false;
      continue;
    }
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    pending_break = true;
    std::size_t len = c >= 0x80 ? utf8_punct_length(t, i) : 1;
    i += len ? len : 1;
  }
  return out;
}

bool has_letter(std::string_view w) {
  for (unsigned char c : w)
    if (!((c >= '0' && c <= '9') || c == '-' || c == '\'')) return true;
  return false;
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& w : scan_words(text))
    out.push_back(canonical_term(text.substr(w.begin, w.end - w.begin)));
  return out;
}

std::vector<ExtractedTerm> extract_terms(std::string_view text) {
  return extract_terms(text, default_stopwords());
}

std::vector<ExtractedTerm> extract_terms(std::string_view text, const StopwordSet& stopwords) {
  struct Candidate {
    TextSpan span;
    std::vector<std::string> words;
  };
  std::vector<Candidate> candidates;
  Candidate current;
  auto flush = [&] {
    if (!current.words.empty()) candidates.push_back(std::move(current));
    current = Candidate{};
  };
  for (const auto& w : scan_words(text)) {
    std::string word = canonical_term(text.substr(w.begin, w.end - w.begin));
    if (w.break_before) flush();
    if (stopwords.contains(word) || !has_letter(word)) {
      flush();
      continue;
    }
    if (current.words.empty()) current.span.begin = w.begin;
    current.span.end = w.end;
    current.words.push_back(std::move(word));
  }
  flush();

  // Word scores over the co-occurrence graph: freq counts occurrences in
  // candidates, degree adds the candidate length at each occurrence.
  std::map<std::string, double> freq, degree;
  for (const auto& c : candidates) {
    for (const auto& w : c.words) {
      freq[w] += 1.0;
      degree[w] += static_cast<double>(c.words.size());
    }
  }

  std::vector<ExtractedTerm> out;
  std::map<std::string, std::size_t> seen;
  for (auto& c : candidates) {
    std::string phrase;
    for (const auto& w : c.words) {
      if (!phrase.empty()) phrase.push_back(' ');
      phrase += w;
    }
    auto it = seen.find(phrase);
    if (it != seen.end()) {
      out[it->second].spans.push_back(c.span);
      continue;
    }
    double score = 0.0;
    for (const auto& w : c.words) score += degree[w] / freq[w];
    if (score <= 0.0) continue;
    seen.emplace(phrase, out.size());
    out.push_back({phrase, std::move(c.words), score, {c.span}});
  }
  return out;
}

}  // namespace mcfrag
