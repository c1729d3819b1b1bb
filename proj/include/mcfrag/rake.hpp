#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mcfrag {

using StopwordSet = std::set<std::string, std::less<>>;

// Version tag of the bundled English stopword list. Extraction output
// depends on the list, so bump this whenever it changes.
inline constexpr std::string_view kStopwordListVersion = "mcfrag-en-1";
const StopwordSet& default_stopwords();

struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const TextSpan&, const TextSpan&) = default;
};

struct ExtractedTerm {
  std::string text;                 // canonical phrase
  std::vector<std::string> words;   // canonical member words
  double score = 0.0;               // sum of member deg(w)/freq(w)
  std::vector<TextSpan> spans;      // every occurrence, in text order
};

// Rapid Automatic Keyword Extraction. Candidate phrases are maximal runs of
// content words separated only by spaces/tabs; stopwords, digit-only words,
// punctuation and line breaks end a phrase. Result is in first-occurrence
// order, one entry per canonical phrase.
std::vector<ExtractedTerm> extract_terms(std::string_view text);
std::vector<ExtractedTerm> extract_terms(std::string_view text, const StopwordSet& stopwords);

// Every word of `text` in order, canonicalised. Used for corpus indexing
// with the same word boundaries as extraction.
std::vector<std::string> tokenize_words(std::string_view text);

}  // namespace mcfrag
