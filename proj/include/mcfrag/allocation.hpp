#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mcfrag/disclosure.hpp"
#include "mcfrag/fragment.hpp"

namespace mcfrag {

enum class Strategy { kUnordered, kOrderedDesc, kOrderedAsc };
std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view s);

struct Allocation {
  // groups[g] holds indices into the input, in placement order.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<Fragment> fragments;
  std::size_t constraint_evaluations = 0;
};

// Greedy first-fit: a term joins the first fragment where, for every
// protected entity, the summed risk stays strictly below the cap.
// Throws kUnplaceableTerm if a term alone reaches the cap.
Allocation allocate(std::span<const TermAssessment> quasi, const PrivacyPolicy& policy,
                    Strategy strategy);

std::vector<Fragment> allocate_fragments(std::span<const TermAssessment> quasi,
                                         const PrivacyPolicy& policy, Strategy strategy);

// Placement order used by `allocate`.
std::vector<std::size_t> allocation_order(std::span<const TermAssessment> quasi,
                                          Strategy strategy);

}  // namespace mcfrag
