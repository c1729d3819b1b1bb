#include "mcfrag/disclosure.hpp"

#include <algorithm>
#include <cmath>

#include "mcfrag/canonical.hpp"
#include "mcfrag/error.hpp"

namespace mcfrag {

PrivacyPolicy PrivacyPolicy::make(std::span<const std::string> entities, double risk_cap) {
  PrivacyPolicy p;
  for (const auto& e : canonical_terms(entities)) p.protected_entities.insert(e);
  p.risk_cap = risk_cap;
  p.validate();
  return p;
}

void PrivacyPolicy::validate() const {
  if (protected_entities.empty())
    throw Error(ErrorCode::kInvalidArgument, "privacy policy protects no entity");
  if (!(risk_cap > 0.0) || !std::isfinite(risk_cap))
    throw Error(ErrorCode::kInvalidArgument, "risk cap must be a positive number");
}

void PrivacyPolicy::validate_on(const CorpusStats& stats) const {
  validate();
  for (const auto& c : protected_entities) {
    auto df = stats.doc_freq(c);
    if (df == 0 || df == stats.paragraph_count())
      throw Error(ErrorCode::kDegenerateEntity,
                  "entity '" + c + "' occurs in " + std::to_string(df) + " of " +
                      std::to_string(stats.paragraph_count()) + " paragraphs");
  }
}

double information_content(std::string_view term, const CorpusStats& stats) {
  const auto n = static_cast<double>(stats.paragraph_count());
  const auto df = stats.doc_freq(term);
  if (df == 0) return std::log2(n) + 1.0;
  return -std::log2(static_cast<double>(df) / n);
}

double disclosure_risk(std::string_view term, std::string_view entity, const CorpusStats& stats) {
  const auto n = stats.paragraph_count();
  const auto df_c = stats.doc_freq(entity);
  if (df_c == 0 || df_c == n)
    throw Error(ErrorCode::kDegenerateEntity,
                "entity '" + std::string(entity) + "' has no usable information content");
  if (term == entity) return 1.0;
  const auto co = stats.co_doc_freq(term, entity);
  if (co == 0) return 0.0;
  const auto df_t = stats.doc_freq(term);
  // PMI reaches IC(c) exactly when t never occurs without c.
  if (co == df_t) return 1.0;
  const double pmi = std::log2(static_cast<double>(co) * static_cast<double>(n) /
                               (static_cast<double>(df_t) * static_cast<double>(df_c)));
  const double ic_c = -std::log2(static_cast<double>(df_c) / static_cast<double>(n));
  return std::max(0.0, pmi) / ic_c;
}

std::string_view to_string(TermClass c) {
  switch (c) {
    case TermClass::kIdentifier: return "identifier";
    case TermClass::kQuasiIdentifier: return "quasi_identifier";
    case TermClass::kSafe: return "safe";
  }
  return "safe";
}

double TermAssessment::max_risk() const {
  double m = 0.0;
  for (const auto& [c, r] : risk) m = std::max(m, r);
  return m;
}

TermClass classify_risk(double max_risk) {
  if (max_risk >= 1.0) return TermClass::kIdentifier;
  if (max_risk > 0.0) return TermClass::kQuasiIdentifier;
  return TermClass::kSafe;
}

std::vector<TermAssessment> classify_terms(std::span<const std::string> terms,
                                           const PrivacyPolicy& policy,
                                           const CorpusStats& stats) {
  policy.validate_on(stats);
  std::vector<TermAssessment> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    TermAssessment a;
    a.term = t;
    a.ic = information_content(t, stats);
    for (const auto& c : policy.protected_entities) a.risk[c] = disclosure_risk(t, c, stats);
    a.cls = classify_risk(a.max_risk());
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace mcfrag
