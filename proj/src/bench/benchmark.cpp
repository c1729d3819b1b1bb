#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "mcfrag/bench.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/splitter.hpp"

namespace mcfrag {

std::string_view to_string(Solution s) {
  return s == Solution::kBaseline ? "baseline" : "framework";
}

namespace {

constexpr std::string_view kPcsp = "pcsp";

std::vector<std::string> bench_csp_list(std::size_t secondaries) {
  std::vector<std::string> ids{std::string(kPcsp)};
  for (std::size_t i = 1; i <= secondaries; ++i) ids.push_back("scsp" + std::to_string(i));
  return ids;
}

struct Accumulator {
  double frag = 0, id = 0, qid = 0, et = 0, op = 0, sim = 0, time = 0;
  std::size_t docs = 0, failures = 0;

  void add(const SplitMetrics& m, const CostModel& cost) {
    frag += static_cast<double>(m.frag);
    id += static_cast<double>(m.id);
    qid += static_cast<double>(m.qid);
    et += static_cast<double>(m.et);
    op += static_cast<double>(m.op_cost());
    sim += cost.constraint_evaluation * static_cast<double>(m.constraint_evaluations) +
           cost.store * static_cast<double>(m.store_calls) +
           cost.query * static_cast<double>(m.queries);
    time += m.time_ms;
    ++docs;
  }

  MetricRow row(Solution s, Strategy st, std::optional<double> coverage) const {
    MetricRow r;
    r.solution = s;
    r.strategy = st;
    r.coverage = coverage;
    const double d = docs ? static_cast<double>(docs) : 1.0;
    r.frag = frag / d;
    r.id = id / d;
    r.qid = qid / d;
    if (s == Solution::kFramework) r.et = et / d;
    r.op_cost = op / d;
    r.sim_cost = sim / d;
    r.time_ms = time / d;
    r.documents = docs;
    r.failures = failures;
    return r;
  }
};

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

std::vector<std::size_t> select_paragraphs(std::size_t count, const BenchConfig& config) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  if (config.sample && *config.sample < count) {
    std::mt19937_64 rng(config.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(*config.sample);
    std::sort(idx.begin(), idx.end());
  }
  return idx;
}

BenchReport run_benchmark(const Corpus& corpus, const BenchConfig& config) {
  config.policy.validate_on(corpus.stats);
  for (double c : config.coverages)
    if (!(c >= 0.0 && c <= 1.0))
      throw Error(ErrorCode::kInvalidArgument, "coverage must lie in [0, 1]");

  const auto csp_list = bench_csp_list(config.secondaries);
  CspRegistry empty;
  for (const auto& id : csp_list) empty.add(CspDescriptor::make(id, Tier::kPublic));

  const auto docs = select_paragraphs(corpus.paragraphs.size(), config);
  BenchReport report;
  report.documents = docs.size();

  auto run = [&](const CspRegistry& base, Solution solution, Strategy strategy,
                 std::optional<double> coverage) {
    Accumulator acc;
    for (auto p : docs) {
      CspRegistry reg = base.clone();
      Proxy proxy(reg, FanOut::kSequential);
      SplitRequest req;
      req.object_id = "doc-" + std::to_string(p);
      req.document = corpus.paragraphs[p];
      req.policy = config.policy;
      req.csp_list = csp_list;
      req.strategy = strategy;
      req.store_policy = config.store_policy;
      req.reuse = solution == Solution::kFramework;
      try {
        acc.add(split_with_reuse(proxy, corpus.stats, req).metrics, config.cost);
      } catch (const Error& e) {
        ++acc.failures;
        report.failures.push_back({p, std::string(error_name(e.code())) + ": " + e.what()});
      }
    }
    report.rows.push_back(acc.row(solution, strategy, coverage));
  };

  for (auto strategy : config.strategies) run(empty, Solution::kBaseline, strategy, std::nullopt);

  if (!config.coverages.empty()) {
    TermDatabase full = build_term_db(corpus, 1.0);
    for (double coverage : config.coverages) {
      TermDatabase db = full;
      db.seeded = std::min(db.ranked.size(),
                           static_cast<std::size_t>(std::floor(
                               coverage * static_cast<double>(db.ranked.size()) + 1e-9)));
      CspRegistry seeded = empty.clone();
      std::vector<CspStore*> secondaries;
      for (std::size_t i = 1; i < csp_list.size(); ++i) secondaries.push_back(&seeded.get(csp_list[i]));
      db.seed(secondaries);
      seeded.reset_counters();
      for (auto strategy : config.strategies) run(seeded, Solution::kFramework, strategy, coverage);
    }
  }
  return report;
}

const MetricRow* BenchReport::find(Solution s, Strategy st, std::optional<double> coverage) const {
  for (const auto& r : rows) {
    if (r.solution != s || r.strategy != st) continue;
    if (s == Solution::kFramework && coverage &&
        (!r.coverage || std::abs(*r.coverage - *coverage) > 1e-12))
      continue;
    return &r;
  }
  return nullptr;
}

nlohmann::json BenchReport::json() const {
  using nlohmann::json;
  json rows_j = json::array();
  for (const auto& r : rows) {
    json j{{"solution", to_string(r.solution)},
           {"strategy", to_string(r.strategy)},
           {"frag", r.frag},
           {"id", r.id},
           {"qid", r.qid},
           {"op_cost", r.op_cost},
           {"sim_cost", r.sim_cost},
           {"time_ms", r.time_ms},
           {"documents", r.documents},
           {"failures", r.failures}};
    j["coverage"] = r.coverage ? json(*r.coverage) : json(nullptr);
    j["et"] = r.et ? json(*r.et) : json(nullptr);
    rows_j.push_back(std::move(j));
  }
  json fails = json::array();
  for (const auto& f : failures) fails.push_back({{"paragraph", f.paragraph}, {"error", f.error}});
  return {{"schema", 1}, {"documents", documents}, {"rows", rows_j}, {"failures", fails}};
}

std::string BenchReport::text() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-13s %8s %7s %7s %7s %7s %9s %9s %10s\n", "Solution",
                "Strategy", "Coverage", "frag", "id", "qid", "et", "OpCost", "SimCost",
                "Time(ms)");
  os << line << std::string(95, '-') << "\n";
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %-13s %8s %7s %7s %7s %7s %9s %9s %10s\n",
                  std::string(to_string(r.solution)).c_str(),
                  std::string(to_string(r.strategy)).c_str(),
                  r.coverage ? format_double(*r.coverage, 2).c_str() : "-",
                  format_double(r.frag, 2).c_str(), format_double(r.id, 2).c_str(),
                  format_double(r.qid, 2).c_str(), r.et ? format_double(*r.et, 2).c_str() : "-",
                  format_double(r.op_cost, 2).c_str(), format_double(r.sim_cost, 2).c_str(),
                  format_double(r.time_ms, 3).c_str());
    os << line;
  }
  os << "documents: " << documents << ", failures: " << failures.size() << "\n";
  return os.str();
}

}  // namespace mcfrag
