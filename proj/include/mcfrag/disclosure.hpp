#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcfrag/corpus.hpp"

namespace mcfrag {

struct PrivacyPolicy {
  std::set<std::string> protected_entities;  // canonical
  double risk_cap = 1.0;

  // Canonicalises the entities. Throws kInvalidArgument if empty or cap <= 0.
  static PrivacyPolicy make(std::span<const std::string> entities, double risk_cap = 1.0);
  void validate() const;
  // Throws kDegenerateEntity when some entity has df 0 or df N.
  void validate_on(const CorpusStats& stats) const;
};

// -log2(df/N); unseen terms get log2(N) + 1.
double information_content(std::string_view term, const CorpusStats& stats);

// max(0, PMI(t;c)) / IC(c). Exactly 1 when every paragraph holding t also
// holds c (this includes t == c); 0 when they never co-occur.
double disclosure_risk(std::string_view term, std::string_view entity,
                       const CorpusStats& stats);

enum class TermClass { kIdentifier, kQuasiIdentifier, kSafe };
std::string_view to_string(TermClass c);

struct TermAssessment {
  std::string term;
  double ic = 0.0;
  std::map<std::string, double> risk;  // per protected entity
  TermClass cls = TermClass::kSafe;

  double max_risk() const;
};

// Identifier iff max risk >= 1; quasi-identifier iff 0 < max risk < 1.
TermClass classify_risk(double max_risk);

std::vector<TermAssessment> classify_terms(std::span<const std::string> terms,
                                           const PrivacyPolicy& policy,
                                           const CorpusStats& stats);

}  // namespace mcfrag
