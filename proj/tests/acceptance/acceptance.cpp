// One PASS/FAIL line per acceptance criterion. Tolerances are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mcfrag/bench.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/proxy.hpp"
#include "mcfrag/splitter.hpp"

using namespace mcfrag;

namespace {

constexpr double kMathTolerance = 1e-9;
constexpr double kLosslessBudgetSec = 60;
constexpr double kDirectionBudgetSec = 300;
constexpr double kAllocationBudgetSec = 120;
constexpr std::size_t kLosslessSample = 100;
constexpr std::size_t kMinDirectionCorpus = 50;
constexpr double kDirectionCoverage = 0.3;
constexpr std::size_t kMinCheckedFragments = 500;
constexpr std::size_t kAllocationInstances = 200;
constexpr std::size_t kMaxQuasi = 10;
constexpr std::size_t kAllocationSlack = 2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string data_dir() { return MCFRAG_DATA_DIR; }

const Corpus& corpus() {
  static const Corpus c = ingest_corpus(data_dir() + "/corpus");
  return c;
}

const PolicyFile& policy_file() {
  static const PolicyFile pf = load_policy_file(data_dir() + "/policy.json");
  return pf;
}

CspRegistry make_registry(std::size_t secondaries) {
  CspRegistry r;
  r.add(CspDescriptor::make("pcsp", Tier::kPublic));
  for (std::size_t i = 1; i <= secondaries; ++i)
    r.add(CspDescriptor::make("scsp" + std::to_string(i), Tier::kPublic));
  return r;
}

std::size_t total_writes(const CspRegistry& r) { return r.total_counters().writes; }

// --- 1 ---------------------------------------------------------------------

Outcome lossless() {
  const auto t0 = Clock::now();
  const auto& c = corpus();
  if (c.paragraphs.size() < kLosslessSample)
    return {false, "corpus has only " + std::to_string(c.paragraphs.size()) + " paragraphs"};
  std::vector<std::size_t> idx(c.paragraphs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937_64 rng(2024);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(kLosslessSample);

  CspRegistry reg = make_registry(3);
  Proxy proxy(reg);
  const auto csps = reg.ids();
  std::size_t bad_semantic = 0, bad_bytes = 0;
  for (auto i : idx) {
    const auto& text = c.paragraphs[i];
    SplitRequest req;
    req.object_id = "sem-" + std::to_string(i);
    req.document = text;
    req.policy = policy_file().policy;
    req.csp_list = csps;
    split_with_reuse(proxy, c.stats, req);
    if (to_string(proxy.retrieve(req.object_id).data) != text) ++bad_semantic;

    std::vector<Fragment> blocks;
    const Bytes bytes = to_bytes(text);
    for (std::size_t off = 0; off < bytes.size(); off += 128)
      blocks.push_back(Fragment::byte_block(
          Bytes(bytes.begin() + off, bytes.begin() + std::min(bytes.size(), off + 128))));
    const std::string id = "blk-" + std::to_string(i);
    proxy.outsource(id, blocks, csps, StorePolicy::kPcspIfMissing);
    if (proxy.retrieve(id).data != bytes) ++bad_bytes;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << kLosslessSample << " paragraphs, mismatches semantic=" << bad_semantic << " bytes=" << bad_bytes
    << ", " << secs << " s";
  return {bad_semantic == 0 && bad_bytes == 0 && secs < kLosslessBudgetSec, d.str()};
}

// --- 2 ---------------------------------------------------------------------

Outcome direction() {
  const auto t0 = Clock::now();
  const auto& c = corpus();
  if (c.paragraphs.size() < kMinDirectionCorpus) return {false, "corpus too small"};
  if (policy_file().policy.protected_entities.size() != 2) return {false, "policy is not two-entity"};
  BenchConfig cfg;
  cfg.policy = policy_file().policy;
  cfg.coverages = {kDirectionCoverage};
  cfg.strategies = {Strategy::kUnordered, Strategy::kOrderedDesc};
  auto report = run_benchmark(c, cfg);
  bool ok = report.failures.empty();
  std::ostringstream d;
  for (auto st : cfg.strategies) {
    const auto* b = report.find(Solution::kBaseline, st);
    const auto* f = report.find(Solution::kFramework, st, kDirectionCoverage);
    if (!b || !f) return {false, "missing report rows"};
    const double et = f->et.value_or(0);
    ok = ok && f->frag < b->frag && f->qid < b->qid && et > 0 && f->op_cost < b->op_cost;
    d << to_string(st) << ": frag " << b->frag << "->" << f->frag << ", qid " << b->qid << "->" << f->qid
      << ", et " << et << ", op " << b->op_cost << "->" << f->op_cost << "; ";
  }
  const double secs = seconds_since(t0);
  d << c.paragraphs.size() << " paragraphs, " << secs << " s";
  return {ok && secs < kDirectionBudgetSec, d.str()};
}

// --- 3 ---------------------------------------------------------------------

Outcome monotone() {
  BenchConfig cfg;
  cfg.policy = policy_file().policy;
  cfg.coverages = {0.0, 0.25, 0.5, 0.75, 1.0};
  auto report = run_benchmark(corpus(), cfg);
  bool ok = report.failures.empty();
  std::ostringstream d;
  for (auto st : cfg.strategies) {
    const auto* b = report.find(Solution::kBaseline, st);
    const auto* z = report.find(Solution::kFramework, st, 0.0);
    ok = ok && b && z && z->frag == b->frag && z->id == b->id && z->qid == b->qid &&
         z->op_cost == b->op_cost && z->et == 0.0;
    double prev_frag = std::numeric_limits<double>::infinity(), prev_et = -1;
    d << to_string(st) << " frag/et:";
    for (double cov : cfg.coverages) {
      const auto* f = report.find(Solution::kFramework, st, cov);
      if (!f) return {false, "missing report rows"};
      ok = ok && f->frag <= prev_frag && *f->et >= prev_et;
      prev_frag = f->frag;
      prev_et = *f->et;
      d << " " << f->frag << "/" << *f->et;
    }
    d << "; ";
  }
  return {ok, d.str()};
}

// --- 4 ---------------------------------------------------------------------

// Risk recomputed from raw counts, without the library's formula.
double checker_risk(const std::string& term, const std::string& entity, const CorpusStats& s) {
  if (term == entity) return 1.0;
  const double n = static_cast<double>(s.paragraph_count());
  const double dt = static_cast<double>(s.doc_freq(term));
  const double dc = static_cast<double>(s.doc_freq(entity));
  const double co = static_cast<double>(s.co_doc_freq(term, entity));
  if (co == 0 || dt == 0) return 0.0;
  double pmi = std::log2(co / n) - std::log2(dt / n) - std::log2(dc / n);
  return std::max(0.0, pmi) / std::log2(n / dc);
}

Outcome privacy_cap() {
  const auto& c = corpus();
  // Several two-entity policies and caps over the whole corpus push the
  // number of outsourced fragments past the floor.
  const std::vector<std::pair<std::vector<std::string>, double>> policies{
      {{"hiv", "virus"}, 1.0},  {{"hiv", "virus"}, 0.6},   {{"blood", "infection"}, 1.0},
      {{"river", "water"}, 1.0}, {{"bread", "flour"}, 0.8}, {{"station", "train"}, 1.0},
  };
  std::size_t checked = 0, violations = 0, skipped_policies = 0;
  double worst = 0;
  for (const auto& [entities, cap] : policies) {
    auto policy = PrivacyPolicy::make(entities, cap);
    try {
      policy.validate_on(c.stats);
    } catch (const Error&) {
      ++skipped_policies;
      continue;
    }
    for (auto st : {Strategy::kUnordered, Strategy::kOrderedDesc, Strategy::kOrderedAsc}) {
      CspRegistry reg = make_registry(2);
      Proxy proxy(reg, FanOut::kSequential);
      for (std::size_t p = 0; p < c.paragraphs.size(); ++p) {
        SplitRequest req;
        req.object_id = "p" + std::to_string(p);
        req.document = c.paragraphs[p];
        req.policy = policy;
        req.csp_list = reg.ids();
        req.strategy = st;
        req.reuse = false;
        SplitPlan plan;
        try {
          plan = split_with_reuse(proxy, c.stats, req);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kUnplaceableTerm) continue;
          throw;
        }
        // Check what the PCSP actually holds, not what the plan claims.
        for (const auto& row : plan.table.rows) {
          if (!row.slots[0]) continue;
          auto f = reg.get(row.slots[0]->csp_id).fetch(*row.slots[0]);
          if (!f || f->kind() != FragmentKind::kTermSet) continue;
          ++checked;
          for (const auto& e : policy.protected_entities) {
            double sum = 0;
            for (const auto& t : f->terms()) sum += checker_risk(t, e, c.stats);
            worst = std::max(worst, sum / cap);
            if (!(sum < cap)) ++violations;
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << checked << " fragments, " << violations << " violations, worst sum/cap " << worst;
  if (skipped_policies) d << ", " << skipped_policies << " degenerate policies skipped";
  return {checked >= kMinCheckedFragments && violations == 0, d.str()};
}

// --- 5 ---------------------------------------------------------------------

std::size_t exhaustive_optimum(const std::vector<std::vector<double>>& risks, double cap) {
  const std::size_t n = risks.size();
  if (n == 0) return 0;
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<char> ok(full + 1, 0);
  for (std::size_t m = 1; m <= full; ++m) {
    bool good = true;
    for (std::size_t e = 0; e < risks[0].size() && good; ++e) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (m >> i & 1) s += risks[i][e];
      good = s < cap;
    }
    ok[m] = good;
  }
  const std::size_t inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(full + 1, inf);
  best[0] = 0;
  for (std::size_t m = 1; m <= full; ++m) {
    const std::size_t low = m & (~m + 1);
    for (std::size_t sub = m; sub; sub = (sub - 1) & m)
      if ((sub & low) && ok[sub] && best[m ^ sub] != inf) best[m] = std::min(best[m], best[m ^ sub] + 1);
  }
  return best[full];
}

Outcome allocation() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  const std::vector<std::string> entities{"c1", "c2"};
  auto policy = PrivacyPolicy::make(entities, 1.0);
  std::size_t cap_violations = 0, gap_violations = 0, worst_gap = 0;
  for (std::size_t inst = 0; inst < kAllocationInstances; ++inst) {
    const std::size_t n = 1 + rng() % kMaxQuasi;
    std::vector<TermAssessment> quasi(n);
    std::vector<std::vector<double>> risks(n);
    for (std::size_t i = 0; i < n; ++i) {
      quasi[i].term = "t" + std::to_string(i);
      quasi[i].cls = TermClass::kQuasiIdentifier;
      for (const auto& e : entities) {
        double r = (rng() % 3 == 0) ? 0.0 : u(rng);
        quasi[i].risk[e] = r;
        risks[i].push_back(r);
      }
    }
    for (auto st : {Strategy::kUnordered, Strategy::kOrderedDesc, Strategy::kOrderedAsc}) {
      auto a = allocate(quasi, policy, st);
      std::vector<int> seen(n, 0);
      for (const auto& g : a.groups) {
        for (std::size_t e = 0; e < entities.size(); ++e) {
          double s = 0;
          for (auto i : g) s += risks[i][e];
          if (!(s < policy.risk_cap)) ++cap_violations;
        }
        for (auto i : g) ++seen[i];
      }
      if (std::any_of(seen.begin(), seen.end(), [](int k) { return k != 1; })) ++cap_violations;
      const auto opt = exhaustive_optimum(risks, policy.risk_cap);
      worst_gap = std::max(worst_gap, a.groups.size() - std::min(a.groups.size(), opt));
      if (a.groups.size() > opt + kAllocationSlack) ++gap_violations;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << kAllocationInstances << " instances x 3 strategies, cap violations " << cap_violations
    << ", over optimum+" << kAllocationSlack << ": " << gap_violations << ", worst gap " << worst_gap
    << ", " << secs << " s";
  return {cap_violations == 0 && gap_violations == 0 && secs < kAllocationBudgetSec, d.str()};
}

// --- 6 ---------------------------------------------------------------------

Outcome repair_one(bool corrupt, std::string& note) {
  CspRegistry reg = make_registry(2);
  Proxy proxy(reg);
  const Bytes content = to_bytes("patient record block that must survive the loss of its primary copy");
  auto frag = Fragment::byte_block(content);
  reg.get("scsp1").store(frag);  // the single SCSP replica
  auto table = proxy.outsource("obj", std::vector<Fragment>{frag}, reg.ids(), StorePolicy::kPcspIfMissing);
  const auto old = table.rows[0].slots[0];
  if (!old || old->csp_id != "pcsp" || !table.rows[0].slots[1]) return {false, "unexpected initial table"};
  if (corrupt)
    reg.get("pcsp").inject_fault(*old, FaultMode::corrupted(5));
  else
    reg.get("pcsp").inject_fault(*old, FaultMode::missing());

  auto first = proxy.retrieve("obj");
  const auto moved = proxy.table("obj").rows[0].slots[0];
  const std::size_t writes_before = total_writes(reg);
  auto second = proxy.retrieve("obj");
  const std::size_t repeat_writes = total_writes(reg) - writes_before;

  bool ok = first.data == content && first.repairs.size() == 1 && moved && moved->csp_id != old->csp_id &&
            second.data == content && second.repairs.empty() && second.store_calls == 0 &&
            repeat_writes == 0;
  note += std::string(corrupt ? "corrupt" : "delete") + ": slot0 " + old->csp_id + "->" +
          (moved ? moved->csp_id : "None") + ", repeat writes " + std::to_string(repeat_writes) + "; ";
  return {ok, ""};
}

Outcome repair() {
  std::string note;
  bool ok = repair_one(false, note).pass;
  ok = repair_one(true, note).pass && ok;
  return {ok, note};
}

// --- 7 ---------------------------------------------------------------------

Outcome conflict() {
  std::ostringstream d;
  bool ok = true;
  for (bool replica : {true, false}) {
    CspRegistry reg = make_registry(2);
    Proxy proxy(reg);
    auto shared = Fragment::byte_block(to_bytes("shared block"));
    auto tail_a = Fragment::byte_block(to_bytes(" of A"));
    auto tail_b = Fragment::byte_block(to_bytes(" of B"));
    if (replica) reg.get("scsp2").store(shared);
    proxy.outsource("A", std::vector<Fragment>{shared, tail_a}, reg.ids(), StorePolicy::kPcspIfMissing);
    proxy.outsource("B", std::vector<Fragment>{shared, tail_b}, reg.ids(), StorePolicy::kPcspIfMissing);
    auto report = proxy.delete_fragment("A", 0);
    ok = ok && report.removed && report.conflicted == std::set<std::string>{"B"};
    if (replica) {
      auto r = proxy.retrieve("B");
      ok = ok && to_string(r.data) == "shared block of B" && r.repairs.size() == 1 &&
           r.repairs[0].row == 0;
      d << "replica: conflicted {B}, B repaired; ";
    } else {
      try {
        proxy.retrieve("B");
        ok = false;
        d << "no replica: retrieve unexpectedly succeeded; ";
      } catch (const Error& e) {
        ok = ok && e.code() == ErrorCode::kUnrecoverable && e.row() == std::optional<std::size_t>(0);
        d << "no replica: conflicted {B}, B " << error_name(e.code()) << "; ";
      }
    }
  }
  return {ok, d.str()};
}

// --- 8 ---------------------------------------------------------------------

Outcome disclosure_math() {
  // N=8: c in 2, t in 2, u in 4, a in all 8; t and c share 2, u and c share 1.
  auto stats = CorpusStats::from_counts(
      8, {{"c", 2}, {"t", 2}, {"u", 4}, {"a", 8}},
      {{{"t", "c"}, 2}, {{"u", "c"}, 1}});
  struct Case {
    const char* what;
    double got, want;
  };
  std::vector<Case> cases{
      {"IC(df=N)", information_content("a", stats), 0.0},
      {"IC(df=2)", information_content("c", stats), 2.0},
      {"IC(df=0)", information_content("zzz", stats), 4.0},
      {"risk(c,c)", disclosure_risk("c", "c", stats), 1.0},
      {"risk(t,c)", disclosure_risk("t", "c", stats), 1.0},
      {"risk(u,c)", disclosure_risk("u", "c", stats), 0.0},
  };
  bool ok = true;
  std::ostringstream d;
  for (const auto& k : cases) {
    const bool good = std::abs(k.got - k.want) <= kMathTolerance;
    ok = ok && good;
    d << k.what << "=" << (k.got == 0 ? 0.0 : k.got) << (good ? "" : "(!)") << " ";
  }
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"losslessness", lossless},        {"reuse beats baseline", direction},
      {"monotone reuse", monotone},      {"privacy cap", privacy_cap},
      {"allocation vs optimum", allocation}, {"repair path", repair},
      {"shared deletion", conflict},     {"disclosure math", disclosure_math},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
