#include "mcfrag/splitter.hpp"

#include <algorithm>
#include <chrono>

#include "core/json_io.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/rake.hpp"

namespace mcfrag {
namespace {

Binding bind_surface(Binding b, std::string_view surface, const std::string& canonical) {
  if (auto mask = case_mask(surface, canonical))
    b.upper = std::move(*mask);
  else
    b.surface = std::string(surface);
  return b;
}

Sensitivity sensitivity_of(TermClass c) {
  return c == TermClass::kIdentifier ? Sensitivity::kIdentifier : Sensitivity::kQuasiIdentifier;
}

}  // namespace

SplitPlan split_with_reuse(Proxy& proxy, const CorpusStats& stats, const SplitRequest& req) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!is_valid_utf8(req.document))
    throw Error(ErrorCode::kInvalidArgument, "semantic splitting needs UTF-8 text");
  if (req.csp_list.empty()) throw Error(ErrorCode::kEmptyCspList, "no CSPs given");
  req.policy.validate_on(stats);
  const std::size_t n = req.csp_list.size();

  SplitPlan plan;
  plan.object_id = req.object_id;
  auto extracted = extract_terms(req.document);
  std::vector<std::string> texts;
  texts.reserve(extracted.size());
  for (const auto& t : extracted) texts.push_back(t.text);
  plan.assessments = classify_terms(texts, req.policy, stats);

  SplitMetrics& m = plan.metrics;
  m.extracted = extracted.size();

  // Where each extracted term ends up.
  enum class Fate { kClear, kThirdParty, kLocal, kAllocated };
  std::vector<Fate> fate(extracted.size(), Fate::kClear);
  std::vector<std::size_t> slot(extracted.size(), 0);
  std::vector<TermAssessment> quasi_left;
  std::vector<std::size_t> quasi_source;

  for (std::size_t i = 0; i < extracted.size(); ++i) {
    const auto& a = plan.assessments[i];
    if (a.cls == TermClass::kSafe) {
      ++m.safe;
      continue;
    }
    if (a.cls == TermClass::kIdentifier) ++m.identifiers_total;
    else ++m.quasi_total;

    if (req.reuse) {
      const std::vector<std::string> one{a.term};
      SLoc sloc = proxy.broadcast_query(fragment_key(TermSetPayload{one}), req.csp_list);
      m.queries += n;
      if (std::any_of(sloc.begin(), sloc.end(), [](const auto& s) { return s.has_value(); })) {
        fate[i] = Fate::kThirdParty;
        slot[i] = plan.third_party.size();
        plan.third_party.push_back({a.term, a.cls, plan.third_party.size(), std::move(sloc)});
        continue;
      }
    }
    if (a.cls == TermClass::kIdentifier) {
      fate[i] = Fate::kLocal;
      slot[i] = plan.local_identifiers.size();
      plan.local_identifiers.push_back(a.term);
    } else {
      fate[i] = Fate::kAllocated;
      slot[i] = quasi_left.size();
      quasi_left.push_back(a);
      quasi_source.push_back(i);
    }
  }

  Allocation alloc = allocate(quasi_left, req.policy, req.strategy);
  plan.fragments = alloc.fragments;
  m.constraint_evaluations = alloc.constraint_evaluations;
  m.frag = alloc.fragments.size();
  m.qid = quasi_left.size();
  m.id = plan.local_identifiers.size();
  m.et = plan.third_party.size();

  // Quasi-identifier -> (allocated row, index within its sorted term list).
  const std::size_t first_alloc_row = plan.third_party.size();
  std::vector<std::pair<std::size_t, std::size_t>> alloc_pos(quasi_left.size());
  for (std::size_t g = 0; g < alloc.groups.size(); ++g) {
    auto terms = alloc.fragments[g].terms();
    for (auto qi : alloc.groups[g]) {
      auto at = std::lower_bound(terms.begin(), terms.end(), quasi_left[qi].term);
      alloc_pos[qi] = {first_alloc_row + g, static_cast<std::size_t>(at - terms.begin())};
    }
  }

  std::vector<Placement> placements;
  for (std::size_t i = 0; i < extracted.size(); ++i) {
    if (fate[i] == Fate::kClear) continue;
    Binding b;
    switch (fate[i]) {
      case Fate::kThirdParty:
        b.source = Binding::Source::kFragment;
        b.row = slot[i];
        b.index = 0;
        break;
      case Fate::kLocal:
        b.source = Binding::Source::kLocal;
        b.index = slot[i];
        break;
      case Fate::kAllocated:
        b.source = Binding::Source::kFragment;
        b.row = alloc_pos[slot[i]].first;
        b.index = alloc_pos[slot[i]].second;
        break;
      case Fate::kClear:
        break;
    }
    for (const auto& span : extracted[i].spans) {
      auto surface = req.document.substr(span.begin, span.end - span.begin);
      placements.push_back({span.begin, span.end, bind_surface(b, surface, extracted[i].text)});
    }
  }
  plan.manifest = DocumentManifest::from_placements(req.object_id, req.document,
                                                    std::move(placements), plan.local_identifiers);

  OutsourceRequest out;
  out.object_id = req.object_id;
  out.csp_list = req.csp_list;
  out.policy = req.store_policy;
  out.manifest = plan.manifest;
  for (const auto& tp : plan.third_party) {
    const std::vector<std::string> one{tp.term};
    // Identifiers answered by a third party are referenced, never re-stored.
    out.items.push_back({Fragment::term_set(one, sensitivity_of(tp.cls)), tp.sloc,
                         tp.cls != TermClass::kIdentifier});
  }
  for (const auto& f : alloc.fragments) {
    std::optional<SLoc> known;
    if (!req.reuse)
      known = SLoc(n);
    else
      m.queries += n;
    out.items.push_back({f, std::move(known), true});
  }
  for (const auto& id : plan.local_identifiers) {
    const std::vector<std::string> one{id};
    out.local_fragments.push_back(Fragment::term_set(one, Sensitivity::kIdentifier));
  }

  auto result = proxy.outsource(std::move(out));
  plan.table = std::move(result.table);
  m.store_calls = result.store_calls;
  m.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return plan;
}

SplitPlan split_baseline(Proxy& proxy, const CorpusStats& stats, SplitRequest request) {
  request.reuse = false;
  return split_with_reuse(proxy, stats, request);
}

nlohmann::json to_json(const SplitPlan& plan) {
  using nlohmann::json;
  json assessments = json::array();
  for (const auto& a : plan.assessments)
    assessments.push_back(
        {{"term", a.term}, {"ic", a.ic}, {"risk", a.risk}, {"class", to_string(a.cls)}});
  json third = json::array();
  for (const auto& t : plan.third_party)
    third.push_back({{"term", t.term}, {"class", to_string(t.cls)}, {"row", t.row},
                     {"sloc", io::to_json(t.sloc)}});
  json frags = json::array();
  for (const auto& f : plan.fragments)
    frags.push_back({{"key", f.key().hex()}, {"terms", f.terms()}});
  const auto& m = plan.metrics;
  return {{"schema", io::kSchemaVersion},
          {"object_id", plan.object_id},
          {"assessments", assessments},
          {"third_party", third},
          {"local_identifiers", plan.local_identifiers},
          {"fragments", frags},
          {"table", io::to_json(plan.table)},
          {"manifest", io::to_json(plan.manifest)},
          {"metrics",
           {{"frag", m.frag}, {"id", m.id}, {"qid", m.qid}, {"et", m.et},
            {"extracted", m.extracted}, {"identifiers_total", m.identifiers_total},
            {"quasi_total", m.quasi_total}, {"safe", m.safe},
            {"constraint_evaluations", m.constraint_evaluations},
            {"store_calls", m.store_calls}, {"queries", m.queries}, {"op_cost", m.op_cost()},
            {"time_ms", m.time_ms}}}};
}

PolicyFile parse_policy_file(const nlohmann::json& j) {
  try {
    PolicyFile pf;
    auto entities = j.at("protected").get<std::vector<std::string>>();
    pf.policy = PrivacyPolicy::make(entities, j.value("risk_cap", 1.0));
    if (j.contains("strategy")) pf.strategy = strategy_from_string(j["strategy"].get<std::string>());
    if (j.contains("store_policy"))
      pf.store_policy = store_policy_from_string(j["store_policy"].get<std::string>());
    if (j.contains("corpus")) pf.corpus = j["corpus"].get<std::string>();
    return pf;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("policy file: ") + e.what());
  }
}

PolicyFile load_policy_file(const std::filesystem::path& path) {
  auto pf = parse_policy_file(io::read_json(path));
  if (pf.corpus && pf.corpus->is_relative()) pf.corpus = path.parent_path() / *pf.corpus;
  return pf;
}

FragmentValidator make_policy_validator(PrivacyPolicy policy, const CorpusStats& stats) {
  return [policy = std::move(policy), &stats](const Fragment& f) {
    if (f.kind() != FragmentKind::kTermSet) return;
    auto terms = f.terms();
    auto assessed = classify_terms(terms, policy, stats);
    std::map<std::string, double> sums;
    for (const auto& a : assessed) {
      if (a.cls == TermClass::kIdentifier)
        throw Error(ErrorCode::kPolicyViolation,
                    "term '" + a.term + "' is an identifier and cannot be outsourced");
      for (const auto& [c, r] : a.risk) sums[c] += r;
    }
    for (const auto& [c, s] : sums)
      if (!(s < policy.risk_cap))
        throw Error(ErrorCode::kPolicyViolation,
                    "fragment discloses '" + c + "' with aggregated risk " + std::to_string(s));
  };
}

}  // namespace mcfrag
