// Python bindings for the main library operations.

#include "clawgate/harness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

namespace py = pybind11;
using namespace clawgate;

namespace {

py::dict findingToDict(const DlpFinding& f) {
    py::dict d;
    d["pattern_id"] = f.patternId;
    d["severity"] = severityName(f.severity);
    d["begin"] = f.begin;
    d["end"] = f.end;
    return d;
}

}  // namespace

PYBIND11_MODULE(_clawgate, m) {
    m.doc() = "clawgate runtime-security primitives";

    // stats
    py::class_<WilsonInterval>(m, "WilsonInterval")
        .def_readonly("low", &WilsonInterval::low)
        .def_readonly("high", &WilsonInterval::high)
        .def_readonly("k", &WilsonInterval::k)
        .def_readonly("n", &WilsonInterval::n)
        .def_readonly("z", &WilsonInterval::z);
    m.def("wilson", &wilson, py::arg("k"), py::arg("n"), py::arg("confidence") = 0.95);
    m.def("mcnemar", &mcnemar, py::arg("b"), py::arg("c"));
    m.def("normal_quantile", &normalQuantile, py::arg("p"));

    // prng
    py::class_<Mulberry32>(m, "Mulberry32")
        .def(py::init<std::uint32_t>())
        .def_static("from_string", &Mulberry32::fromString)
        .def("next_uint32", &Mulberry32::nextUint32)
        .def("next", &Mulberry32::next);

    // detectors
    m.def("detect_injection", [](const std::string& text) {
        py::list out;
        for (const auto& f : detectInjection(text)) {
            py::dict d;
            d["kind"] = f.kind == InjectionKind::ImperativeOverride ? "imperative-override"
                                                                    : "role-boundary-token";
            d["token"] = f.matchedToken;
            d["begin"] = f.begin;
            d["end"] = f.end;
            out.append(d);
        }
        return out;
    });
    m.def("dlp_scan", [](const std::string& text, bool widened) {
        DlpCatalog catalog = widened ? widenCatalog(DlpCatalog::strict()) : DlpCatalog::strict();
        py::list out;
        for (const auto& f : dlpScan(text, catalog)) out.append(findingToDict(f));
        return out;
    }, py::arg("text"), py::arg("widened") = false);
    m.def("dlp_block", [](const std::string& text, bool widened) {
        DlpCatalog catalog = widened ? widenCatalog(DlpCatalog::strict()) : DlpCatalog::strict();
        auto decision = aggregate(dlpScan(text, catalog));
        py::dict d;
        d["block"] = decision.block;
        d["severity"] = severityName(decision.severity);
        d["reason"] = decision.reason;
        return d;
    }, py::arg("text"), py::arg("widened") = false);
    m.def("redact", [](const std::string& text, bool widened) {
        DlpCatalog catalog = widened ? widenCatalog(DlpCatalog::strict()) : DlpCatalog::strict();
        return redact(text, dlpScan(text, catalog));
    }, py::arg("text"), py::arg("widened") = true);

    // reconcile
    py::class_<KeyedMultiset>(m, "KeyedMultiset")
        .def(py::init<>())
        .def("add", &KeyedMultiset::add, py::arg("cap"), py::arg("target"), py::arg("count") = 1)
        .def("count", &KeyedMultiset::count)
        .def("key_count", &KeyedMultiset::keyCount)
        .def("empty", &KeyedMultiset::empty);
    m.def("check_biconditional", [](const KeyedMultiset& d, const KeyedMultiset& s) {
        Verdict v = checkBiconditional(d, s);
        py::dict out;
        out["kind"] = verdictName(v.kind);
        out["d_minus_s"] = v.dMinusS;
        out["s_minus_d"] = v.sMinusD;
        return out;
    });
    m.def("canonical_target", &canonicalTarget);

    // audit chain
    py::class_<AuditChain>(m, "AuditChain")
        .def(py::init<>())
        .def("append",
             [](AuditChain& chain, const std::string& recordType, const py::dict& payload) {
                 std::string dumped =
                     py::module_::import("json").attr("dumps")(payload).cast<std::string>();
                 Json j = Json::parse(dumped);
                 const auto& rec = chain.append(recordType, j);
                 return toHex(rec.hash);
             })
        .def("verify",
             [](const AuditChain& chain) -> std::optional<std::size_t> { return chain.verify(); })
        .def("project_s",
             [](const AuditChain& chain, const std::optional<std::string>& probeTag) {
                 return chain.projectS(probeTag);
             },
             py::arg("probe_tag") = std::nullopt)
        .def("size", &AuditChain::size);

    // policy
    m.def("capability_vocabulary", [] { return capabilityVocabulary(); });
    m.def("can_read", [](int clearance, int object) {
        return canRead(static_cast<ClassificationLevel>(clearance),
                       static_cast<ClassificationLevel>(object));
    });
    m.def("can_write", [](int clearance, int object) {
        return canWrite(static_cast<ClassificationLevel>(clearance),
                        static_cast<ClassificationLevel>(object));
    });

    // harness
    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("n_per_cell", &RunConfig::nPerCell)
        .def_readwrite("channels", &RunConfig::channels)
        .def_readwrite("seed_string", &RunConfig::seedString)
        .def_readwrite("stats_only", &RunConfig::statsOnly)
        .def_readwrite("disable_witness", &RunConfig::disableWitness)
        .def_readwrite("widened_dlp", &RunConfig::widenedDlp)
        .def_readwrite("out_dir", &RunConfig::outDir)
        .def_readwrite("subjects", &RunConfig::subjects);
    m.def("run_experiment", [](const RunConfig& config) {
        ReportBundle bundle = runExperiment(config);
        py::dict out;
        out["csv_path"] = bundle.csvPath;
        out["report_path"] = bundle.reportPath;
        out["csv_digest"] = bundle.csvDigest;
        out["chains_ok"] = bundle.chainsOk;
        py::dict subjects;
        for (const auto& r : bundle.results) {
            py::dict s;
            s["failed_closed"] = r.failedClosed;
            s["tp"] = r.aggregate.tp;
            s["fp"] = r.aggregate.fp;
            s["tn"] = r.aggregate.tn;
            s["fn"] = r.aggregate.fn;
            subjects[py::str(r.name)] = s;
        }
        out["subjects"] = subjects;
        return out;
    });
    m.def("scrub_csv", [](const std::filesystem::path& csvPath, bool widened) {
        DlpCatalog catalog = widened ? widenCatalog(DlpCatalog::strict()) : DlpCatalog::strict();
        return scrubCsv(csvPath, catalog);
    }, py::arg("csv_path"), py::arg("widened") = true);
}
