#include "mcfrag/manifest.hpp"

#include <algorithm>
#include <variant>

#include "mcfrag/error.hpp"

namespace mcfrag {
namespace {

constexpr std::string_view kOpen = "\xE2\x9F\xA8";   // U+27E8
constexpr std::string_view kClose = "\xE2\x9F\xA9";  // U+27E9

struct Literal {
  std::string text;
};
struct Slot {
  std::size_t binding;
};
using Segment = std::variant<Literal, Slot>;

void append_escaped(std::string& out, std::string_view text) {
  std::size_t pos = 0;
  while (true) {
    auto hit = text.find(kOpen, pos);
    if (hit == std::string_view::npos) {
      out.append(text.substr(pos));
      return;
    }
    out.append(text.substr(pos, hit - pos));
    out.append(kOpen);
    out.append(kOpen);
    pos = hit + kOpen.size();
  }
}

std::vector<Segment> parse_template(std::string_view t) {
  std::vector<Segment> out;
  std::string lit;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t.substr(i, kOpen.size()) != kOpen) {
      lit.push_back(t[i++]);
      continue;
    }
    i += kOpen.size();
    if (t.substr(i, kOpen.size()) == kOpen) {
      lit.append(kOpen);
      i += kOpen.size();
      continue;
    }
    auto close = t.find(kClose, i);
    if (close == std::string_view::npos || close == i)
      throw Error(ErrorCode::kCorruptMetadata, "unterminated placeholder in manifest template");
    std::size_t idx = 0;
    for (std::size_t k = i; k < close; ++k) {
      if (t[k] < '0' || t[k] > '9')
        throw Error(ErrorCode::kCorruptMetadata, "malformed placeholder in manifest template");
      idx = idx * 10 + static_cast<std::size_t>(t[k] - '0');
    }
    if (!lit.empty()) out.emplace_back(Literal{std::move(lit)});
    lit.clear();
    out.emplace_back(Slot{idx});
    i = close + kClose.size();
  }
  if (!lit.empty()) out.emplace_back(Literal{std::move(lit)});
  return out;
}

std::string render(std::span<const Segment> segments) {
  std::string out;
  for (const auto& seg : segments) {
    if (const auto* l = std::get_if<Literal>(&seg)) {
      append_escaped(out, l->text);
    } else {
      out.append(kOpen);
      out.append(std::to_string(std::get<Slot>(seg).binding));
      out.append(kClose);
    }
  }
  return out;
}

std::string resolve(const Binding& b, const std::string& canonical) {
  if (b.surface) {
    if (canonical_term(*b.surface) == canonical) return *b.surface;
  }
  return apply_case_mask(canonical, b.upper);
}

}  // namespace

DocumentManifest DocumentManifest::concatenate(std::string object_id) {
  DocumentManifest m;
  m.object_id = std::move(object_id);
  m.mode = Mode::kConcatenate;
  return m;
}

DocumentManifest DocumentManifest::from_placements(std::string object_id, std::string_view text,
                                                   std::vector<Placement> placements,
                                                   std::vector<std::string> local_identifiers) {
  std::sort(placements.begin(), placements.end(),
            [](const Placement& a, const Placement& b) { return a.begin < b.begin; });
  DocumentManifest m;
  m.object_id = std::move(object_id);
  m.mode = Mode::kTemplate;
  m.local_identifiers = std::move(local_identifiers);
  std::vector<Segment> segments;
  std::size_t cursor = 0;
  for (auto& p : placements) {
    if (p.begin < cursor || p.end < p.begin || p.end > text.size())
      throw Error(ErrorCode::kInvalidArgument, "overlapping or out-of-range placement");
    if (p.begin > cursor)
      segments.emplace_back(Literal{std::string(text.substr(cursor, p.begin - cursor))});
    segments.emplace_back(Slot{m.bindings.size()});
    m.bindings.push_back(std::move(p.binding));
    cursor = p.end;
  }
  if (cursor < text.size()) segments.emplace_back(Literal{std::string(text.substr(cursor))});
  m.template_text = render(segments);
  return m;
}

Bytes DocumentManifest::reassemble(std::span<const Fragment> rows) const {
  if (mode == Mode::kConcatenate) {
    Bytes out;
    for (const auto& f : rows) out.insert(out.end(), f.bytes().begin(), f.bytes().end());
    return out;
  }
  std::vector<std::vector<std::string>> row_terms;
  row_terms.reserve(rows.size());
  for (const auto& f : rows) row_terms.push_back(f.terms());

  std::string out;
  for (const auto& seg : parse_template(template_text)) {
    if (const auto* l = std::get_if<Literal>(&seg)) {
      out.append(l->text);
      continue;
    }
    auto bi = std::get<Slot>(seg).binding;
    if (bi >= bindings.size())
      throw Error(ErrorCode::kReassemblyFailed, "placeholder refers to missing binding");
    const Binding& b = bindings[bi];
    if (b.source == Binding::Source::kLocal) {
      if (b.index >= local_identifiers.size())
        throw Error(ErrorCode::kReassemblyFailed, "local identifier index out of range");
      out.append(resolve(b, local_identifiers[b.index]));
    } else {
      if (b.row >= row_terms.size() || b.index >= row_terms[b.row].size())
        throw Error(ErrorCode::kReassemblyFailed,
                    "binding to row " + std::to_string(b.row) + " term " +
                        std::to_string(b.index) + " has no source",
                    b.row);
      out.append(resolve(b, row_terms[b.row][b.index]));
    }
  }
  return to_bytes(out);
}

void DocumentManifest::drop_row(std::size_t row) {
  if (mode == Mode::kConcatenate) return;
  std::vector<Segment> kept;
  std::vector<Binding> new_bindings;
  for (auto& seg : parse_template(template_text)) {
    if (auto* s = std::get_if<Slot>(&seg)) {
      if (s->binding >= bindings.size())
        throw Error(ErrorCode::kCorruptMetadata, "placeholder refers to missing binding");
      Binding b = bindings[s->binding];
      if (b.source == Binding::Source::kFragment) {
        if (b.row == row) continue;
        if (b.row > row) --b.row;
      }
      kept.emplace_back(Slot{new_bindings.size()});
      new_bindings.push_back(std::move(b));
    } else {
      auto& lit = std::get<Literal>(seg);
      if (!kept.empty())
        if (auto* prev = std::get_if<Literal>(&kept.back())) {
          prev->text.append(lit.text);
          continue;
        }
      kept.push_back(std::move(seg));
    }
  }
  bindings = std::move(new_bindings);
  template_text = render(kept);
}

std::optional<std::size_t> DocumentManifest::max_bound_index(std::size_t row) const {
  std::optional<std::size_t> best;
  for (const auto& b : bindings)
    if (b.source == Binding::Source::kFragment && b.row == row)
      best = best ? std::max(*best, b.index) : b.index;
  return best;
}

}  // namespace mcfrag
