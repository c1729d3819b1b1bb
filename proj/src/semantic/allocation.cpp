#include "mcfrag/allocation.hpp"

#include <algorithm>
#include <numeric>

#include "mcfrag/error.hpp"

namespace mcfrag {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kUnordered: return "unordered";
    case Strategy::kOrderedDesc: return "ordered-desc";
    case Strategy::kOrderedAsc: return "ordered-asc";
  }
  return "unordered";
}

Strategy strategy_from_string(std::string_view s) {
  if (s == "unordered") return Strategy::kUnordered;
  if (s == "ordered-desc" || s == "ordered") return Strategy::kOrderedDesc;
  if (s == "ordered-asc") return Strategy::kOrderedAsc;
  throw Error(ErrorCode::kInvalidArgument, "unknown strategy: " + std::string(s));
}

std::vector<std::size_t> allocation_order(std::span<const TermAssessment> quasi,
                                          Strategy strategy) {
  std::vector<std::size_t> order(quasi.size());
  std::iota(order.begin(), order.end(), 0);
  if (strategy == Strategy::kUnordered) return order;
  std::vector<double> risk(quasi.size());
  for (std::size_t i = 0; i < quasi.size(); ++i) risk[i] = quasi[i].max_risk();
  const bool desc = strategy == Strategy::kOrderedDesc;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (risk[a] != risk[b]) return desc ? risk[a] > risk[b] : risk[a] < risk[b];
    return quasi[a].term < quasi[b].term;
  });
  return order;
}

Allocation allocate(std::span<const TermAssessment> quasi, const PrivacyPolicy& policy,
                    Strategy strategy) {
  for (const auto& q : quasi) {
    for (const auto& c : policy.protected_entities) {
      auto it = q.risk.find(c);
      double r = it == q.risk.end() ? 0.0 : it->second;
      if (!(r < policy.risk_cap))
        throw Error(ErrorCode::kUnplaceableTerm,
                    "term '" + q.term + "' alone reaches the risk cap for '" + c + "'");
    }
  }

  Allocation out;
  std::vector<std::map<std::string, double>> sums;
  for (auto idx : allocation_order(quasi, strategy)) {
    const auto& term = quasi[idx];
    bool placed = false;
    for (std::size_t g = 0; g < out.groups.size() && !placed; ++g) {
      ++out.constraint_evaluations;
      bool fits = true;
      for (const auto& c : policy.protected_entities) {
        auto it = term.risk.find(c);
        double r = it == term.risk.end() ? 0.0 : it->second;
        if (!(sums[g][c] + r < policy.risk_cap)) {
          fits = false;
          break;
        }
      }
      if (fits) {
        out.groups[g].push_back(idx);
        for (const auto& [c, r] : term.risk) sums[g][c] += r;
        placed = true;
      }
    }
    if (!placed) {
      out.groups.push_back({idx});
      sums.emplace_back(term.risk.begin(), term.risk.end());
    }
  }
  for (const auto& group : out.groups) {
    std::vector<std::string> terms;
    for (auto i : group) terms.push_back(quasi[i].term);
    out.fragments.push_back(Fragment::term_set(terms, Sensitivity::kQuasiIdentifier));
  }
  return out;
}

std::vector<Fragment> allocate_fragments(std::span<const TermAssessment> quasi,
                                         const PrivacyPolicy& policy, Strategy strategy) {
  return allocate(quasi, policy, strategy).fragments;
}

}  // namespace mcfrag
