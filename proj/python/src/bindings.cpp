#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "core/json_io.hpp"
#include "mcfrag/allocation.hpp"
#include "mcfrag/bench.hpp"
#include "mcfrag/canonical.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/proxy.hpp"
#include "mcfrag/rake.hpp"
#include "mcfrag/splitter.hpp"
#ifdef MCFRAG_WITH_CLI
#include "mcfrag/cli.hpp"
#endif

namespace py = pybind11;
using namespace py::literals;
using namespace mcfrag;

namespace {

py::object to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Bytes as_bytes(const py::bytes& b) {
  std::string s = b;
  return Bytes(s.begin(), s.end());
}

py::bytes from_bytes(const Bytes& b) {
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

PrivacyPolicy make_policy(const std::vector<std::string>& entities, double cap) {
  return PrivacyPolicy::make(entities, cap);
}

}  // namespace

PYBIND11_MODULE(_mcfrag, m) {
  m.doc() = "Multi-cloud data splitting with third-party fragment reuse";

  static PyObject* error_type =
      PyErr_NewException("mcfrag._mcfrag.McfragError", PyExc_RuntimeError, nullptr);
  m.add_object("McfragError", py::handle(error_type));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(error_name(e.code()));
      exc.attr("row") = e.row() ? py::cast(*e.row()) : py::none();
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("canonical_term", &canonical_term);
  m.def("stopword_list_version", [] { return std::string(kStopwordListVersion); });

  py::class_<Fragment>(m, "Fragment")
      .def_static("term_set",
                  [](const std::vector<std::string>& terms, const std::string& sensitivity) {
                    return Fragment::term_set(terms, sensitivity_from_string(sensitivity));
                  },
                  py::arg("terms"), py::arg("sensitivity") = "quasi_identifier")
      .def_static("byte_block", [](const py::bytes& b) { return Fragment::byte_block(as_bytes(b)); })
      .def_property_readonly("key", [](const Fragment& f) { return f.key().hex(); })
      .def_property_readonly("kind", [](const Fragment& f) { return std::string(to_string(f.kind())); })
      .def_property_readonly("data", [](const Fragment& f) { return from_bytes(f.bytes()); })
      .def_property_readonly("terms", &Fragment::terms)
      .def("self_verifies", &Fragment::self_verifies)
      .def("__eq__", [](const Fragment& a, const Fragment& b) { return a == b; });

  py::class_<CspRegistry>(m, "CspRegistry")
      .def(py::init<>())
      .def("add",
           [](CspRegistry& r, const std::string& id, const std::string& tier) {
             r.add(CspDescriptor::make(id, tier_from_string(tier)));
           },
           py::arg("csp_id"), py::arg("tier") = "public")
      .def("ids", &CspRegistry::ids)
      .def("query",
           [](CspRegistry& r, const std::string& id, const std::string& key) -> std::optional<std::string> {
             auto loc = r.get(id).query(FragmentKey::from_hex(key));
             return loc ? std::optional<std::string>(loc->str()) : std::nullopt;
           })
      .def("store", [](CspRegistry& r, const std::string& id, const Fragment& f) { return r.get(id).store(f).str(); })
      .def("object_count", [](CspRegistry& r, const std::string& id) { return r.get(id).size(); })
      .def("inject_fault",
           [](CspRegistry& r, const std::string& location, const std::string& kind, std::size_t pos) {
             auto loc = StorageLocation::parse(location);
             if (kind == "missing") r.get(loc.csp_id).inject_fault(loc, FaultMode::missing());
             else if (kind == "corrupted") r.get(loc.csp_id).inject_fault(loc, FaultMode::corrupted(pos));
             else throw Error(ErrorCode::kInvalidArgument, "fault kind must be 'missing' or 'corrupted'");
           },
           py::arg("location"), py::arg("kind") = "missing", py::arg("position") = 0)
      .def("set_reachable", [](CspRegistry& r, const std::string& id, bool on) { r.get(id).set_reachable(on); })
      .def("counters",
           [](const CspRegistry& r) {
             auto c = r.total_counters();
             return py::dict("queries"_a = c.queries, "stores"_a = c.stores, "writes"_a = c.writes,
                             "fetches"_a = c.fetches, "removes"_a = c.removes);
           })
      .def("reset_counters", &CspRegistry::reset_counters)
      .def("save", [](const CspRegistry& r, const std::string& root) { r.save(root); })
      .def_static("load", [](const std::string& root) { return std::make_unique<CspRegistry>(CspRegistry::load(root)); });

  py::class_<Proxy>(m, "Proxy")
      .def(py::init<CspRegistry&>(), py::keep_alive<1, 2>())
      .def("outsource_bytes",
           [](Proxy& p, const std::string& object_id, const std::vector<py::bytes>& chunks,
              const std::vector<std::string>& csps, const std::string& policy) {
             std::vector<Fragment> frags;
             for (const auto& c : chunks) frags.push_back(Fragment::byte_block(as_bytes(c)));
             return to_py(io::to_json(p.outsource(object_id, frags, csps, store_policy_from_string(policy))));
           },
           py::arg("object_id"), py::arg("chunks"), py::arg("csp_list"),
           py::arg("store_policy") = "pcsp-if-missing")
      .def("retrieve",
           [](Proxy& p, const std::string& object_id, std::optional<std::string> new_pcsp) {
             RetrieveOptions opts;
             opts.new_pcsp = std::move(new_pcsp);
             auto r = p.retrieve(object_id, opts);
             py::list repairs;
             for (const auto& rep : r.repairs)
               repairs.append(py::dict("row"_a = rep.row,
                                       "old_slot0"_a = rep.old_slot0 ? py::cast(rep.old_slot0->str()) : py::none(),
                                       "new_slot0"_a = rep.new_slot0.str()));
             return py::make_tuple(from_bytes(r.data), repairs);
           },
           py::arg("object_id"), py::arg("new_pcsp") = py::none())
      .def("update_fragment",
           [](Proxy& p, const std::string& object_id, std::size_t row, py::object payload,
              const std::string& approach) {
             Payload pl = py::isinstance<py::bytes>(payload)
                              ? Payload(as_bytes(payload.cast<py::bytes>()))
                              : Payload(TermSetPayload{payload.cast<std::vector<std::string>>()});
             UpdateOptions opts;
             opts.approach = update_approach_from_string(approach);
             auto r = p.update_fragment(object_id, row, pl, opts);
             return py::dict("old_key"_a = r.old_key.hex(), "new_key"_a = r.new_key.hex(),
                             "new_slot0"_a = r.new_slot0.str());
           },
           py::arg("object_id"), py::arg("row"), py::arg("payload"), py::arg("approach") = "in-place")
      .def("delete_fragment",
           [](Proxy& p, const std::string& object_id, std::size_t row) {
             auto r = p.delete_fragment(object_id, row);
             return py::dict("deleted"_a = r.deleted.str(), "removed"_a = r.removed,
                             "conflicted"_a = std::vector<std::string>(r.conflicted.begin(), r.conflicted.end()));
           })
      .def("table", [](const Proxy& p, const std::string& id) { return to_py(io::to_json(p.table(id))); })
      .def("object_ids", &Proxy::object_ids)
      .def("audit_refcounts", &Proxy::audit_refcounts)
      .def("save", [](const Proxy& p, const std::string& dir) { p.save(dir); })
      .def("load", [](Proxy& p, const std::string& dir) { p.load(dir); });

  m.def("extract_terms", [](const std::string& text) {
    py::list out;
    for (const auto& t : extract_terms(text)) {
      py::list spans;
      for (const auto& s : t.spans) spans.append(py::make_tuple(s.begin, s.end));
      out.append(py::dict("text"_a = t.text, "words"_a = t.words, "score"_a = t.score, "spans"_a = spans));
    }
    return out;
  });

  py::class_<CorpusStats>(m, "CorpusStats")
      .def_static("from_paragraphs",
                  [](const std::vector<std::string>& ps) { return CorpusStats::from_paragraphs(ps); })
      .def_static("from_counts",
                  [](std::size_t n, std::map<std::string, std::size_t> df,
                     const std::map<std::pair<std::string, std::string>, std::size_t>& codf) {
                    return CorpusStats::from_counts(n, std::move(df), codf);
                  })
      .def_property_readonly("paragraph_count", &CorpusStats::paragraph_count)
      .def("doc_freq", [](const CorpusStats& s, const std::string& t) { return s.doc_freq(t); })
      .def("co_doc_freq",
           [](const CorpusStats& s, const std::string& t, const std::string& c) { return s.co_doc_freq(t, c); });

  m.def("information_content",
        [](const std::string& t, const CorpusStats& s) { return information_content(t, s); });
  m.def("disclosure_risk", [](const std::string& t, const std::string& c, const CorpusStats& s) {
    return disclosure_risk(t, c, s);
  });
  m.def("classify_terms",
        [](const std::vector<std::string>& terms, const std::vector<std::string>& entities,
           const CorpusStats& stats, double cap) {
          py::list out;
          for (const auto& a : classify_terms(terms, make_policy(entities, cap), stats))
            out.append(py::dict("term"_a = a.term, "ic"_a = a.ic, "risk"_a = a.risk,
                                "class"_a = std::string(to_string(a.cls))));
          return out;
        },
        py::arg("terms"), py::arg("protected"), py::arg("stats"), py::arg("risk_cap") = 1.0);

  m.def("allocate",
        [](const std::vector<std::map<std::string, double>>& risks,
           const std::vector<std::string>& entities, double cap, const std::string& strategy) {
          auto policy = make_policy(entities, cap);
          std::vector<TermAssessment> quasi;
          for (std::size_t i = 0; i < risks.size(); ++i) {
            TermAssessment a;
            a.term = "t" + std::to_string(i);
            a.risk = risks[i];
            a.cls = classify_risk(a.max_risk());
            quasi.push_back(std::move(a));
          }
          auto alloc = allocate(quasi, policy, strategy_from_string(strategy));
          return py::make_tuple(alloc.groups, alloc.constraint_evaluations);
        },
        py::arg("risks"), py::arg("protected"), py::arg("risk_cap") = 1.0,
        py::arg("strategy") = "unordered");

  m.def("split",
        [](Proxy& proxy, const CorpusStats& stats, const std::string& object_id,
           const std::string& document, const std::vector<std::string>& entities,
           const std::vector<std::string>& csps, const std::string& strategy,
           const std::string& store_policy, bool reuse, double cap) {
          SplitRequest req;
          req.object_id = object_id;
          req.document = document;
          req.policy = make_policy(entities, cap);
          req.csp_list = csps;
          req.strategy = strategy_from_string(strategy);
          req.store_policy = store_policy_from_string(store_policy);
          req.reuse = reuse;
          return to_py(to_json(split_with_reuse(proxy, stats, req)));
        },
        py::arg("proxy"), py::arg("stats"), py::arg("object_id"), py::arg("document"),
        py::arg("protected"), py::arg("csp_list"), py::arg("strategy") = "unordered",
        py::arg("store_policy") = "skip-if-any-found", py::arg("reuse") = true,
        py::arg("risk_cap") = 1.0);

  py::class_<Corpus>(m, "Corpus")
      .def_readonly("paragraphs", &Corpus::paragraphs)
      .def_readonly("stats", &Corpus::stats);
  m.def("ingest_corpus", [](const std::string& dir) { return ingest_corpus(dir); });

  m.def("run_benchmark",
        [](const Corpus& corpus, const std::vector<std::string>& entities,
           const std::vector<double>& coverages, const std::vector<std::string>& strategies,
           std::optional<std::size_t> sample, std::uint64_t seed, double cap) {
          BenchConfig cfg;
          cfg.policy = make_policy(entities, cap);
          cfg.coverages = coverages;
          cfg.strategies.clear();
          for (const auto& s : strategies) cfg.strategies.push_back(strategy_from_string(s));
          cfg.sample = sample;
          cfg.seed = seed;
          return to_py(run_benchmark(corpus, cfg).json());
        },
        py::arg("corpus"), py::arg("protected"), py::arg("coverages") = std::vector<double>{0.3},
        py::arg("strategies") = std::vector<std::string>{"unordered", "ordered-desc"},
        py::arg("sample") = py::none(), py::arg("seed") = 0, py::arg("risk_cap") = 1.0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
#ifdef MCFRAG_WITH_CLI
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
#else
    (void)args;
    throw Error(ErrorCode::kInvalidArgument, "built without the command-line front end");
#endif
  });
}
