#include <algorithm>

#include "core/json_io.hpp"
#include "mcfrag/bench.hpp"
#include "mcfrag/error.hpp"

namespace mcfrag {

namespace fs = std::filesystem;

namespace {

struct Unit {
  std::string text;
  bool starts_paragraph = false;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

// Source paragraphs: blocks separated by blank lines, inner line breaks
// folded to single spaces.
std::vector<std::string> source_paragraphs(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line = trim(text.substr(pos, nl - pos));
    if (line.empty()) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      if (!cur.empty()) cur.push_back(' ');
      cur += line;
    }
    pos = nl + 1;
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> sentences(const std::string& para) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < para.size(); ++i) {
    char c = para[i];
    if ((c == '.' || c == '!' || c == '?') && (i + 1 == para.size() || para[i + 1] == ' ')) {
      out.push_back(trim(std::string_view(para).substr(start, i + 1 - start)));
      start = i + 1;
    }
  }
  if (start < para.size()) {
    auto tail = trim(std::string_view(para).substr(start));
    if (!tail.empty()) out.push_back(tail);
  }
  return out;
}

// Pieces of at most `limit` bytes, cut at spaces where possible and never
// inside a UTF-8 sequence.
std::vector<std::string> hard_split(const std::string& s, std::size_t limit) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (s.size() - start > limit) {
    std::size_t cut = s.rfind(' ', start + limit);
    if (cut == std::string::npos || cut <= start) {
      cut = start + limit;
      while (cut > start && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
      if (cut == start) cut = start + limit;
    }
    out.push_back(trim(std::string_view(s).substr(start, cut - start)));
    start = cut;
    while (start < s.size() && s[start] == ' ') ++start;
  }
  if (start < s.size()) out.push_back(s.substr(start));
  return out;
}

}  // namespace

std::vector<std::string> pack_paragraphs(std::string_view text, const PackingOptions& opts) {
  if (opts.slack >= opts.target || opts.upper() < opts.lower() + 4)
    throw Error(ErrorCode::kInvalidArgument, "packing slack must be smaller than the target");
  // A unit never exceeds this, so an overflow flush always leaves at least
  // `lower` bytes behind.
  const std::size_t max_unit = opts.upper() - opts.lower() - 2;

  std::vector<Unit> units;
  for (const auto& para : source_paragraphs(text)) {
    bool first = true;
    for (const auto& sentence : sentences(para)) {
      for (auto& piece : hard_split(sentence, max_unit)) {
        units.push_back({std::move(piece), first});
        first = false;
      }
    }
  }

  std::vector<std::string> out;
  std::string buffer;
  for (auto& u : units) {
    if (buffer.empty()) {
      buffer = std::move(u.text);
      continue;
    }
    std::string_view sep = u.starts_paragraph ? "\n\n" : " ";
    bool boundary_flush = u.starts_paragraph && buffer.size() >= opts.lower();
    bool overflow = buffer.size() + sep.size() + u.text.size() > opts.upper();
    if (boundary_flush || overflow) {
      out.push_back(std::move(buffer));
      buffer = std::move(u.text);
    } else {
      buffer.append(sep);
      buffer.append(u.text);
    }
  }
  if (!buffer.empty()) out.push_back(std::move(buffer));
  return out;
}

Corpus make_corpus(std::vector<std::string> paragraphs) {
  if (paragraphs.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus has no paragraphs");
  Corpus c;
  c.stats = CorpusStats::from_paragraphs(paragraphs);
  c.sources.assign(paragraphs.size(), "");
  c.paragraphs = std::move(paragraphs);
  return c;
}

Corpus ingest_corpus(const fs::path& dir, const PackingOptions& opts) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kEmptyCorpus, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    if (e.path().filename().string().starts_with(".")) continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> paragraphs, sources;
  for (const auto& f : files) {
    auto bytes = io::read_file(f);
    for (auto& p : pack_paragraphs(to_string(bytes), opts)) {
      paragraphs.push_back(std::move(p));
      sources.push_back(fs::relative(f, dir).string());
    }
  }
  if (paragraphs.empty()) throw Error(ErrorCode::kEmptyCorpus, dir.string() + " holds no text");
  Corpus c = make_corpus(std::move(paragraphs));
  c.sources = std::move(sources);
  return c;
}

}  // namespace mcfrag
