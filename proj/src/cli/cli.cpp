#include "mcfrag/cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include "core/json_io.hpp"
#include "mcfrag/bench.hpp"
#include "mcfrag/canonical.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/proxy.hpp"
#include "mcfrag/splitter.hpp"

namespace mcfrag {

namespace {

namespace fs = std::filesystem;
using io::json;

constexpr int kExitUnexpected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitErrorBase = 10;

int exit_code_for(ErrorCode code) { return kExitErrorBase + static_cast<int>(code); }

// Exclusive advisory lock on <ws>/.lock for the lifetime of a mutating command.
class WorkspaceLock {
 public:
  explicit WorkspaceLock(const fs::path& ws) {
    fs::create_directories(ws);
    fd_ = ::open((ws / ".lock").c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw Error(ErrorCode::kIo, "cannot open workspace lock");
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw Error(ErrorCode::kWorkspaceLocked, "workspace is in use by another invocation");
    }
  }
  ~WorkspaceLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  WorkspaceLock(const WorkspaceLock&) = delete;
  WorkspaceLock& operator=(const WorkspaceLock&) = delete;

 private:
  int fd_ = -1;
};

struct ObjectMeta {
  std::string mode;  // "semantic" | "bytes"
  std::optional<fs::path> policy;
  std::optional<fs::path> corpus;
};

// Workspace layout: csps/ (registry), proxy/ (tables, manifests, local store),
// workspace.json (object counter and per-object metadata).
struct Workspace {
  fs::path root;
  CspRegistry registry;
  std::unique_ptr<Proxy> proxy;
  std::uint64_t counter = 0;
  std::map<std::string, ObjectMeta> objects;

  static Workspace open(const fs::path& root) {
    Workspace ws;
    ws.root = root;
    ws.registry = CspRegistry::load(root / "csps");
    ws.proxy = std::make_unique<Proxy>(ws.registry);
    ws.proxy->load(root / "proxy");
    if (fs::exists(root / "workspace.json")) {
      auto j = io::read_json(root / "workspace.json");
      io::require_schema(j, "workspace.json");
      try {
        ws.counter = j.at("counter").get<std::uint64_t>();
        for (const auto& [id, m] : j.at("objects").items()) {
          ObjectMeta meta;
          meta.mode = m.at("mode").get<std::string>();
          if (m.contains("policy")) meta.policy = m["policy"].get<std::string>();
          if (m.contains("corpus")) meta.corpus = m["corpus"].get<std::string>();
          ws.objects.emplace(id, std::move(meta));
        }
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kCorruptMetadata, std::string("workspace.json: ") + e.what());
      }
    }
    return ws;
  }

  void save() const {
    registry.save(root / "csps");
    proxy->save(root / "proxy");
    json objs = json::object();
    for (const auto& [id, m] : objects) {
      if (!proxy->has_object(id)) continue;
      json j{{"mode", m.mode}};
      if (m.policy) j["policy"] = m.policy->string();
      if (m.corpus) j["corpus"] = m.corpus->string();
      objs[id] = std::move(j);
    }
    io::write_json(root / "workspace.json",
                   {{"schema", io::kSchemaVersion}, {"counter", counter}, {"objects", objs}});
  }
};

struct Globals {
  std::string workspace = "mcfrag-ws";
  bool json_out = false;
  std::uint64_t seed = 0;
};

std::string make_object_id(std::uint64_t seed, std::uint64_t counter, std::span<const std::uint8_t> content) {
  std::string prefix = std::to_string(seed) + ":" + std::to_string(counter) + ":";
  Bytes material = to_bytes(prefix);
  material.insert(material.end(), content.begin(), content.end());
  return "obj-" + sha256_hex(material).substr(0, 16);
}

std::vector<std::string> resolve_csp_list(const Workspace& ws, const std::vector<std::string>& requested) {
  auto list = requested.empty() ? ws.registry.ids() : requested;
  if (list.empty()) throw Error(ErrorCode::kEmptyCspList, "no CSPs registered; use csp-admin add");
  for (const auto& id : list) ws.registry.get(id);
  return list;
}

Corpus load_corpus(const fs::path& dir) { return ingest_corpus(dir); }

json table_json(const LocationTable& t) { return io::to_json(t); }

json conflict_json(const ConflictReport& r) {
  return {{"deleted", r.deleted.str()},
          {"removed", r.removed},
          {"conflicted", std::vector<std::string>(r.conflicted.begin(), r.conflicted.end())}};
}

void emit(std::ostream& out, const Globals& g, const json& j, const std::string& text) {
  if (g.json_out)
    out << j.dump(2) << "\n";
  else
    out << text;
}

// --- subcommands ---------------------------------------------------------

struct OutsourceArgs {
  std::string file;
  std::string mode = "semantic";
  std::size_t chunk = 4096;
  std::string policy;
  std::string corpus;
  std::vector<std::string> csps;
  std::string strategy;
  std::string store_policy;
};

void cmd_outsource(const Globals& g, const OutsourceArgs& a, std::ostream& out) {
  WorkspaceLock lock(g.workspace);
  auto ws = Workspace::open(g.workspace);
  Bytes content = io::read_file(a.file);
  auto csps = resolve_csp_list(ws, a.csps);
  std::string object_id = make_object_id(g.seed, ws.counter, content);
  ObjectMeta meta;
  meta.mode = a.mode;

  json summary{{"object_id", object_id}, {"mode", a.mode}};
  std::ostringstream text;
  text << object_id << "\n";

  if (a.mode == "bytes") {
    if (a.chunk == 0) throw Error(ErrorCode::kInvalidArgument, "--chunk must be positive");
    std::vector<Fragment> fragments;
    for (std::size_t off = 0; off < content.size(); off += a.chunk) {
      auto end = std::min(content.size(), off + a.chunk);
      fragments.push_back(Fragment::byte_block(Bytes(content.begin() + off, content.begin() + end)));
    }
    if (fragments.empty()) fragments.push_back(Fragment::byte_block({}));
    StorePolicy sp = a.store_policy.empty() ? StorePolicy::kPcspIfMissing
                                            : store_policy_from_string(a.store_policy);
    OutsourceRequest req;
    req.object_id = object_id;
    req.csp_list = csps;
    req.policy = sp;
    for (auto& f : fragments) req.items.push_back({std::move(f), std::nullopt, true});
    auto res = ws.proxy->outsource(std::move(req));
    std::size_t hits = 0;
    for (const auto& e : res.table.rows)
      if (std::any_of(e.slots.begin() + 1, e.slots.end(), [](const auto& s) { return s.has_value(); }))
        ++hits;
    summary["fragments"] = res.table.rows.size();
    summary["stored"] = res.store_calls;
    summary["third_party_hits"] = hits;
    summary["table"] = table_json(res.table);
    text << "fragments: " << res.table.rows.size() << ", stored: " << res.store_calls
         << ", third-party hits: " << hits << "\n";
  } else if (a.mode == "semantic") {
    if (a.policy.empty()) throw Error(ErrorCode::kInvalidArgument, "semantic mode needs --policy");
    auto pf = load_policy_file(a.policy);
    std::optional<fs::path> corpus_dir;
    if (!a.corpus.empty()) corpus_dir = a.corpus;
    else if (pf.corpus) corpus_dir = *pf.corpus;
    if (!corpus_dir) throw Error(ErrorCode::kInvalidArgument, "semantic mode needs --corpus or a policy corpus");
    auto corpus = load_corpus(*corpus_dir);
    pf.policy.validate_on(corpus.stats);

    std::string doc = to_string(content);
    if (!is_valid_utf8(doc)) throw Error(ErrorCode::kInvalidArgument, "semantic mode needs UTF-8 input; use --mode bytes");
    SplitRequest req;
    req.object_id = object_id;
    req.document = doc;
    req.policy = pf.policy;
    req.csp_list = csps;
    req.strategy = a.strategy.empty() ? pf.strategy : strategy_from_string(a.strategy);
    req.store_policy = a.store_policy.empty() ? pf.store_policy : store_policy_from_string(a.store_policy);
    auto plan = split_with_reuse(*ws.proxy, corpus.stats, req);
    const auto& m = plan.metrics;
    summary["stored"] = m.store_calls;
    summary["third_party_hits"] = m.et;
    summary["plan"] = to_json(plan);
    text << "extracted: " << m.extracted << ", identifiers: " << m.identifiers_total
         << ", quasi-identifiers: " << m.quasi_total << "\n"
         << "fragments: " << m.frag << ", stored: " << m.store_calls
         << ", third-party hits: " << m.et << ", kept locally: " << m.id << "\n";
    meta.policy = fs::absolute(a.policy);
    meta.corpus = fs::absolute(*corpus_dir);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown mode '" + a.mode + "'");
  }

  ++ws.counter;
  ws.objects[object_id] = meta;
  ws.save();
  emit(out, g, summary, text.str());
}

void cmd_retrieve(const Globals& g, const std::string& object_id, const std::string& output,
                  const std::string& new_pcsp, bool promote, std::ostream& out) {
  WorkspaceLock lock(g.workspace);
  auto ws = Workspace::open(g.workspace);
  RetrieveOptions opts;
  if (!new_pcsp.empty()) opts.new_pcsp = new_pcsp;
  opts.promote_third_party = promote;
  RetrieveResult res;
  try {
    res = ws.proxy->retrieve(object_id, opts);
  } catch (const Error& e) {
    // Repairs made before the failure are already committed.
    if (e.code() == ErrorCode::kUnrecoverable) ws.save();
    throw;
  }
  ws.save();
  if (!output.empty()) io::write_file(output, res.data);

  json reps = json::array();
  std::ostringstream text;
  for (const auto& r : res.repairs) {
    reps.push_back({{"row", r.row},
                    {"old_slot0", r.old_slot0 ? json(r.old_slot0->str()) : json(nullptr)},
                    {"new_slot0", r.new_slot0.str()}});
    text << "row " << r.row << ": " << (r.old_slot0 ? r.old_slot0->str() : "None") << " -> "
         << r.new_slot0.str() << "\n";
  }
  text << res.repairs.size() << (res.repairs.size() == 1 ? " repair" : " repairs") << "\n";
  if (output.empty() && !g.json_out) {
    out << to_string(res.data);
    return;
  }
  emit(out, g,
       {{"object_id", object_id}, {"bytes", res.data.size()}, {"repairs", reps},
        {"store_calls", res.store_calls}, {"output", output}},
       text.str());
}

void cmd_update(const Globals& g, const std::string& object_id, std::size_t row,
                const std::vector<std::string>& terms, const std::string& payload_file,
                const std::string& approach, const std::string& new_pcsp, std::ostream& out) {
  WorkspaceLock lock(g.workspace);
  auto ws = Workspace::open(g.workspace);
  if (!ws.proxy->has_object(object_id)) throw Error(ErrorCode::kUnknownObject, "unknown object '" + object_id + "'");
  if (terms.empty() == payload_file.empty())
    throw Error(ErrorCode::kInvalidArgument, "give exactly one of --terms or --payload-file");

  Payload payload = terms.empty() ? Payload(io::read_file(payload_file)) : Payload(TermSetPayload{terms});
  UpdateOptions opts;
  opts.approach = update_approach_from_string(approach);
  if (!new_pcsp.empty()) opts.new_pcsp = new_pcsp;

  auto it = ws.objects.find(object_id);
  if (it != ws.objects.end() && it->second.policy && it->second.corpus && !terms.empty()) {
    auto pf = load_policy_file(*it->second.policy);
    auto corpus = load_corpus(*it->second.corpus);
    opts.validator = make_policy_validator(pf.policy, corpus.stats);
  }
  auto res = ws.proxy->update_fragment(object_id, row, payload, opts);
  ws.save();
  emit(out, g,
       {{"object_id", object_id}, {"row", row}, {"old_key", res.old_key.hex()},
        {"new_key", res.new_key.hex()}, {"new_slot0", res.new_slot0.str()}},
       "row " + std::to_string(row) + " -> " + res.new_slot0.str() + "\n");
}

void cmd_delete(const Globals& g, const std::string& object_id, std::size_t row, std::ostream& out) {
  WorkspaceLock lock(g.workspace);
  auto ws = Workspace::open(g.workspace);
  auto rep = ws.proxy->delete_fragment(object_id, row);
  ws.save();
  std::ostringstream text;
  text << "deleted " << rep.deleted.str() << (rep.removed ? "" : " (already absent)") << "\n";
  text << "conflicted:";
  for (const auto& id : rep.conflicted) text << " " << id;
  text << (rep.conflicted.empty() ? " none\n" : "\n");
  emit(out, g, conflict_json(rep), text.str());
}

void cmd_show(const Globals& g, const std::string& object_id, std::ostream& out) {
  auto ws = Workspace::open(g.workspace);
  if (object_id.empty()) {
    auto ids = ws.proxy->object_ids();
    std::ostringstream text;
    for (const auto& id : ids) text << id << "\n";
    emit(out, g, json{{"objects", ids}}, text.str());
    return;
  }
  auto t = ws.proxy->table(object_id);
  std::ostringstream text;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    text << i << " " << t.rows[i].fragment_key.hex();
    for (const auto& s : t.rows[i].slots) text << " " << (s ? s->str() : "None");
    text << "\n";
  }
  emit(out, g, table_json(t), text.str());
}

struct BenchArgs {
  std::string corpus;
  std::string policy;
  std::vector<double> coverages;
  std::vector<std::string> strategies;
  std::optional<std::size_t> sample;
  std::size_t secondaries = 3;
  std::string out_dir;
};

void cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out) {
  auto pf = load_policy_file(a.policy);
  std::optional<fs::path> dir;
  if (!a.corpus.empty()) dir = a.corpus;
  else if (pf.corpus) dir = *pf.corpus;
  if (!dir) throw Error(ErrorCode::kInvalidArgument, "bench needs --corpus or a policy corpus");
  auto corpus = load_corpus(*dir);

  BenchConfig cfg;
  cfg.policy = pf.policy;
  cfg.store_policy = pf.store_policy;
  if (!a.coverages.empty()) cfg.coverages = a.coverages;
  if (!a.strategies.empty()) {
    cfg.strategies.clear();
    for (const auto& s : a.strategies) cfg.strategies.push_back(strategy_from_string(s));
  }
  cfg.sample = a.sample;
  cfg.seed = g.seed;
  cfg.secondaries = a.secondaries;
  auto report = run_benchmark(corpus, cfg);
  auto j = report.json();
  auto text = report.text();
  if (!a.out_dir.empty()) {
    fs::create_directories(a.out_dir);
    io::write_json(fs::path(a.out_dir) / "report.json", j);
    io::write_file(fs::path(a.out_dir) / "report.txt", to_bytes(text));
  }
  emit(out, g, j, text);
}

struct AdminArgs {
  std::string id;
  std::string tier = "public";
  std::vector<std::string> csps;
  std::vector<std::string> terms;
  std::string file;
  std::string corpus;
  double coverage = 0.3;
  std::string location;
  std::size_t position = 0;
  bool online = false;
};

void cmd_admin_add(const Globals& g, const AdminArgs& a, std::ostream& out) {
  WorkspaceLock lock(g.workspace);
  auto ws = Workspace::open(g.workspace);
  if (ws.registry.find(a.id)) throw Error(ErrorCode::kInvalidArgument, "CSP '" + a.id + "' already registered");
  ws.registry.add(CspDescriptor::make(a.id, tier_from_string(a.tier)));
  ws.save();
  emit(out, g, {{"added", a.id}, {"tier", a.tier}}, "added " + a.id + "\n");
}

void cmd_admin_seed(const Globals& g, const AdminArgs& a, std::ostream& out) {
  WorkspaceLock lock(g.workspace);
  auto ws = Workspace::open(g.workspace);
  if (a.csps.empty()) throw Error(ErrorCode::kInvalidArgument, "seed needs --csp");
  std::vector<CspStore*> stores;
  for (const auto& id : a.csps) stores.push_back(&ws.registry.get(id));

  json seeded = json::array();
  std::size_t next = 0;
  auto place = [&](const Fragment& f) {
    auto loc = stores[next++ % stores.size()]->store(f);
    seeded.push_back(loc.str());
  };
  for (const auto& t : a.terms) {
    std::vector<std::string> one{t};
    place(Fragment::term_set(one, Sensitivity::kNonSensitive));
  }
  if (!a.file.empty()) place(Fragment::byte_block(io::read_file(a.file)));
  if (!a.corpus.empty()) {
    auto db = build_term_db(load_corpus(a.corpus), a.coverage);
    std::vector<CspStore*> rotated(stores.begin(), stores.end());
    std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(next % rotated.size()),
                rotated.end());
    db.seed(rotated);
    for (const auto& t : db.seeded_terms()) seeded.push_back(t);
  }
  ws.save();
  std::ostringstream text;
  for (const auto& s : seeded) text << s.get<std::string>() << "\n";
  text << seeded.size() << " seeded\n";
  emit(out, g, {{"seeded", seeded}}, text.str());
}

void cmd_admin_fault(const Globals& g, const AdminArgs& a, bool corrupt, std::ostream& out) {
  WorkspaceLock lock(g.workspace);
  auto ws = Workspace::open(g.workspace);
  auto loc = StorageLocation::parse(a.location);
  auto& csp = ws.registry.get(loc.csp_id);
  if (corrupt) {
    csp.inject_fault(loc, FaultMode::corrupted(a.position));
  } else {
    csp.inject_fault(loc, FaultMode::missing());
  }
  ws.save();
  std::string what = corrupt ? "corrupted" : "deleted";
  emit(out, g, {{what, loc.str()}}, what + " " + loc.str() + "\n");
}

void cmd_admin_offline(const Globals& g, const AdminArgs& a, std::ostream& out) {
  WorkspaceLock lock(g.workspace);
  auto ws = Workspace::open(g.workspace);
  ws.registry.get(a.id).set_reachable(a.online);
  ws.save();
  emit(out, g, {{"csp", a.id}, {"reachable", a.online}},
       a.id + (a.online ? " online\n" : " offline\n"));
}

void cmd_admin_list(const Globals& g, std::ostream& out) {
  auto ws = Workspace::open(g.workspace);
  json arr = json::array();
  std::ostringstream text;
  for (const auto& id : ws.registry.ids()) {
    const auto& c = ws.registry.get(id);
    arr.push_back({{"csp_id", id}, {"tier", to_string(c.descriptor().tier)},
                   {"reachable", c.reachable()}, {"objects", c.size()}});
    text << id << " " << to_string(c.descriptor().tier) << (c.reachable() ? " online " : " offline ")
         << c.size() << "\n";
  }
  emit(out, g, {{"csps", arr}}, text.str());
}

void report_error(std::ostream& err, const std::string& name, const std::string& message,
                  std::optional<std::size_t> row, int code) {
  json j{{"error", name}, {"message", message}, {"exit_code", code}};
  if (row) j["row"] = *row;
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-cloud data splitting proxy with third-party fragment reuse"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("-w,--workspace", g.workspace, "Workspace directory");
  app.add_flag("--json", g.json_out, "Structured JSON output on stdout");
  app.add_option("--seed", g.seed, "Seed for object ids and sampling");

  OutsourceArgs oa;
  auto* outsource = app.add_subcommand("outsource", "Split and outsource a file");
  outsource->add_option("file", oa.file)->required()->check(CLI::ExistingFile);
  outsource->add_option("--mode", oa.mode)->check(CLI::IsMember({"semantic", "bytes"}));
  outsource->add_option("--chunk", oa.chunk, "ByteBlock size in bytes");
  outsource->add_option("--policy", oa.policy, "Policy JSON file");
  outsource->add_option("--corpus", oa.corpus, "Corpus directory for disclosure statistics");
  outsource->add_option("--csps", oa.csps, "CSP list, PCSP first")->delimiter(',');
  outsource->add_option("--strategy", oa.strategy);
  outsource->add_option("--store-policy", oa.store_policy);

  std::string object_id, output, new_pcsp, payload_file, approach = "in-place";
  bool promote = false;
  std::size_t row = 0;
  std::vector<std::string> terms;

  auto* retrieve = app.add_subcommand("retrieve", "Reconstruct an object, repairing conflicts");
  retrieve->add_option("object_id", object_id)->required();
  retrieve->add_option("-o,--output", output);
  retrieve->add_option("--new-pcsp", new_pcsp);
  retrieve->add_flag("--promote", promote, "Also place PCSP copies of third-party rows");

  auto* update = app.add_subcommand("update", "Replace one fragment of an object");
  update->add_option("object_id", object_id)->required();
  update->add_option("row", row)->required();
  update->add_option("--terms", terms)->delimiter(',');
  update->add_option("--payload-file", payload_file);
  update->add_option("--approach", approach)->check(CLI::IsMember({"in-place", "new-pcsp"}));
  update->add_option("--new-pcsp", new_pcsp);

  auto* del = app.add_subcommand("delete", "Delete one fragment of an object");
  del->add_option("object_id", object_id)->required();
  del->add_option("row", row)->required();

  auto* show = app.add_subcommand("show", "List objects or print an object's location table");
  show->add_option("object_id", object_id);

  BenchArgs ba;
  std::size_t sample = 0;
  std::optional<std::uint64_t> bench_seed;
  auto* bench = app.add_subcommand("bench", "Baseline vs reuse benchmark");
  bench->add_option("--corpus", ba.corpus);
  bench->add_option("--policy", ba.policy)->required();
  bench->add_option("--coverage", ba.coverages)->delimiter(',');
  bench->add_option("--strategy", ba.strategies)->delimiter(',');
  bench->add_option("--sample", sample, "Random subset of paragraphs (0 = all)");
  bench->add_option("--secondaries", ba.secondaries);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--out", ba.out_dir, "Directory for report.json and report.txt");

  AdminArgs aa;
  auto* admin = app.add_subcommand("csp-admin", "Simulated CSP controls");
  admin->require_subcommand(1);
  auto* a_add = admin->add_subcommand("add", "Register a CSP");
  a_add->add_option("csp_id", aa.id)->required();
  a_add->add_option("--tier", aa.tier)->check(CLI::IsMember({"public", "private"}));
  auto* a_seed = admin->add_subcommand("seed", "Place third-party fragments");
  a_seed->add_option("--csp", aa.csps)->required()->delimiter(',');
  a_seed->add_option("--term", aa.terms);
  a_seed->add_option("--file", aa.file);
  a_seed->add_option("--corpus", aa.corpus);
  a_seed->add_option("--coverage", aa.coverage);
  auto* a_delete = admin->add_subcommand("delete", "Make a stored object vanish");
  a_delete->add_option("location", aa.location)->required();
  auto* a_corrupt = admin->add_subcommand("corrupt", "Flip a byte of a stored object");
  a_corrupt->add_option("location", aa.location)->required();
  a_corrupt->add_option("--pos", aa.position);
  auto* a_offline = admin->add_subcommand("offline", "Take a CSP offline");
  a_offline->add_option("csp_id", aa.id)->required();
  a_offline->add_flag("--online", aa.online, "Bring it back instead");
  auto* a_list = admin->add_subcommand("list", "Show registered CSPs");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what(), std::nullopt, kExitUsage);
    return kExitUsage;
  }

  try {
    if (*outsource) cmd_outsource(g, oa, out);
    else if (*retrieve) cmd_retrieve(g, object_id, output, new_pcsp, promote, out);
    else if (*update) cmd_update(g, object_id, row, terms, payload_file, approach, new_pcsp, out);
    else if (*del) cmd_delete(g, object_id, row, out);
    else if (*show) cmd_show(g, object_id, out);
    else if (*bench) {
      if (bench_seed) g.seed = *bench_seed;
      if (sample > 0) ba.sample = sample;
      cmd_bench(g, ba, out);
    } else if (*a_add) cmd_admin_add(g, aa, out);
    else if (*a_seed) cmd_admin_seed(g, aa, out);
    else if (*a_delete) cmd_admin_fault(g, aa, false, out);
    else if (*a_corrupt) cmd_admin_fault(g, aa, true, out);
    else if (*a_offline) cmd_admin_offline(g, aa, out);
    else if (*a_list) cmd_admin_list(g, out);
    return 0;
  } catch (const Error& e) {
    int code = exit_code_for(e.code());
    report_error(err, std::string(error_name(e.code())), e.what(), e.row(), code);
    return code;
  } catch (const fs::filesystem_error& e) {
    int code = exit_code_for(ErrorCode::kIo);
    report_error(err, "Io", e.what(), std::nullopt, code);
    return code;
  } catch (const std::exception& e) {
    report_error(err, "Internal", e.what(), std::nullopt, kExitUnexpected);
    return kExitUnexpected;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace mcfrag
