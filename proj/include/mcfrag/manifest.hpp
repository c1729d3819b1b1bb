#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcfrag/fragment.hpp"

namespace mcfrag {

// Where a placeholder's text comes from.
struct Binding {
  enum class Source { kFragment, kLocal };

  Source source = Source::kFragment;
  std::size_t row = 0;    // kFragment: table row
  std::size_t index = 0;  // term index in the row's canonical term list, or
                          // index into local_identifiers
  std::vector<std::size_t> upper;     // code points to uppercase
  std::optional<std::string> surface;  // verbatim text when no mask fits

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct Placement {
  std::size_t begin = 0;
  std::size_t end = 0;
  Binding binding;
};

// Reassembly record kept at the proxy.
//
// kConcatenate: the document is the row payloads joined in order.
// kTemplate: `template_text` is the original text with every extracted
// sensitive span replaced by a token U+27E8 <binding index> U+27E9; a literal
// U+27E8 in the source is written twice.
struct DocumentManifest {
  enum class Mode { kConcatenate, kTemplate };

  std::string object_id;
  Mode mode = Mode::kConcatenate;
  std::string template_text;
  std::vector<Binding> bindings;
  std::vector<std::string> local_identifiers;

  static DocumentManifest concatenate(std::string object_id);
  // Placements must be non-overlapping; they are sorted by offset here.
  static DocumentManifest from_placements(std::string object_id, std::string_view text,
                                          std::vector<Placement> placements,
                                          std::vector<std::string> local_identifiers);

  // Rebuilds the document. `rows[k]` is the verified fragment for table row k.
  Bytes reassemble(std::span<const Fragment> rows) const;

  // Removes placeholders bound to `row` and shifts later rows down by one.
  void drop_row(std::size_t row);
  // Highest term index bound into `row`, if any.
  std::optional<std::size_t> max_bound_index(std::size_t row) const;

  friend bool operator==(const DocumentManifest&, const DocumentManifest&) = default;
};

}  // namespace mcfrag
