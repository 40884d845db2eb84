#include "nevsamp/json_io.hpp"

#include <cmath>
#include <fstream>

namespace nevsamp {

namespace {

Json encode_real(double v) {
    if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
    if (std::isnan(v)) return Json("nan");
    return Json(v);
}

}  // namespace

Json to_json(const ZeroSet& z) {
    Json arr = Json::array();
    for (const auto& a : z.zeros)
        arr.push_back({{"re", a.point.re()},
                       {"im", a.point.im()},
                       {"mult", a.multiplicity}});
    return Json{{"zeros", arr}, {"depth", z.depth}};
}

ZeroSet zeroset_from_json(const Json& j) {
    ZeroSet z;
    z.depth = j.value("depth", 0);
    for (const auto& e : j.at("zeros"))
        z.add(DiskPoint(e.at("re").get<double>(), e.at("im").get<double>()),
              e.value("mult", 1));
    return z;
}

Json to_json(const Configuration& c) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        Json p{{"re", c.points[i].re()}, {"im", c.points[i].im()}};
        if (!c.multiplicities.empty()) p["mult"] = c.multiplicities[i];
        pts.push_back(std::move(p));
    }
    Json out{{"points", pts},
             {"meta",
              {{"kind", c.meta.kind},
               {"parameters", c.meta.parameters},
               {"depth", c.meta.depth}}}};
    if (!c.disk_radii.empty()) out["radii"] = c.disk_radii;
    return out;
}

Configuration configuration_from_json(const Json& j) {
    Configuration c;
    for (const auto& e : j.at("points")) {
        c.points.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
        if (e.contains("mult")) c.multiplicities.push_back(e["mult"].get<int>());
    }
    if (!c.multiplicities.empty() && c.multiplicities.size() != c.points.size())
        throw std::invalid_argument("configuration: partial multiplicities");
    if (j.contains("radii")) {
        c.disk_radii = j["radii"].get<std::vector<double>>();
        if (c.disk_radii.size() != c.points.size())
            throw std::invalid_argument("configuration: radii size mismatch");
    }
    if (j.contains("meta")) {
        const auto& m = j["meta"];
        c.meta.kind = m.value("kind", "");
        c.meta.depth = m.value("depth", 0);
        if (m.contains("parameters")) c.meta.parameters = m["parameters"];
    }
    return c;
}

Json to_json(const BoundaryMeasure& m) {
    Json atoms = Json::array();
    for (const auto& a : m.atoms)
        atoms.push_back({{"angle", a.angle}, {"mass", a.mass}});
    Json out{{"atoms", atoms}};
    if (!m.segments.empty()) {
        Json edges = Json::array();
        for (const auto& s : m.segments)
            edges.push_back({{"a", s.a}, {"b", s.b}, {"value", s.value}});
        out["density"] = Json{{"kind", "table"}, {"params", edges}};
    } else if (m.class_f) {
        out["density"] = Json{{"kind", "classF"},
                              {"params",
                               {{"profile", m.class_f->profile.describe()},
                                {"angle", m.class_f->angle},
                                {"scale", m.class_f->scale}}}};
    }
    return out;
}

BoundaryMeasure measure_from_json(const Json& j) {
    BoundaryMeasure m;
    for (const auto& a : j.at("atoms"))
        m.atoms.push_back({normalize_angle(a.at("angle").get<double>()),
                           a.at("mass").get<double>()});
    if (j.contains("density")) {
        const auto& d = j["density"];
        std::string kind = d.at("kind").get<std::string>();
        if (kind == "table") {
            for (const auto& s : d.at("params"))
                m.segments.push_back({s.at("a").get<double>(),
                                      s.at("b").get<double>(),
                                      s.at("value").get<double>()});
        } else if (kind == "classF") {
            const auto& p = d.at("params");
            m.class_f = ClassFDensity{
                Profile::parse(p.at("profile").get<std::string>()),
                p.value("angle", 0.0), p.value("scale", 1.0)};
        } else {
            throw std::invalid_argument("measure: unknown density kind " + kind);
        }
    }
    return m;
}

Json to_json(const SeriesVerdict& v) {
    return Json{{"classification", to_string(v.classification)},
                {"partial_sums", v.partial_sums},
                {"method", v.method == SeriesVerdict::Method::ClosedForm
                               ? "closed-form"
                               : "tail-model"}};
}

Json to_json(const CriterionReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.per_level)
        rows.push_back({{"n", row.n},
                        {"count", row.count},
                        {"term", row.term},
                        {"partial_sum", row.partial_sum}});
    Json out{{"verdict", to_string(r.verdict)},
             {"series", to_json(r.series)},
             {"per_level", rows},
             {"criterion", r.criterion}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

Json to_json(const WitnessSelection& s) {
    Json q = Json::array();
    for (const auto& idx : s.Q) q.push_back({{"n", idx.n}, {"k", idx.k}});
    Json ln = Json::object();
    for (const auto& [n, l] : s.L_n) ln[std::to_string(n)] = l;
    Json gn = Json::object();
    for (const auto& [n, g] : s.gamma_n) gn[std::to_string(n)] = g;
    return Json{{"Q", q},
                {"L_n", ln},
                {"gamma_n", gn},
                {"invul_partial", s.invul_partial},
                {"hl_partial", s.hl_partial},
                {"hl_series", to_json(s.hl_series)},
                {"empty_selection", s.empty_selection},
                {"verdict", to_string(s.verdict)}};
}

Json to_json(const BlaschkeDistribution& d) {
    Json counts = Json::array();
    for (const auto& [idx, n] : d.counts)
        counts.push_back({{"n", idx.n}, {"k", idx.k}, {"N", n}});
    return Json{{"counts", counts}, {"depth", d.depth}};
}

BlaschkeDistribution distribution_from_json(const Json& j) {
    BlaschkeDistribution d;
    d.depth = j.value("depth", 0);
    for (const auto& e : j.at("counts"))
        d.counts[{e.at("n").get<int>(), e.at("k").get<std::int64_t>()}] =
            e.at("N").get<long>();
    return d;
}

Json to_json(const WitnessReport& r) {
    Json scan = Json::array();
    for (const auto& [rr, v] : r.radial_scan)
        scan.push_back({{"r", rr}, {"value", encode_real(v)}});
    return Json{{"sup_on_lambda", encode_real(r.sup_on_lambda)},
                {"zero_hits", r.zero_hits},
                {"radial_scan", scan},
                {"unbounded_radially_indicator",
                 encode_real(r.unbounded_radially_indicator)},
                {"bounded_on_lambda", r.bounded_on_lambda},
                {"slack", r.slack},
                {"truncation_depth", r.truncation_depth}};
}

Json to_json(const VulnerabilityResult& r) {
    Json placement = Json::array();
    for (const auto& p : r.placement)
        placement.push_back({{"re", p.re()}, {"im", p.im()}});
    Json out{{"value", encode_real(r.value)},
             {"placement", placement},
             {"method", r.method == VulnerabilityResult::Method::Brute
                            ? "brute"
                            : "multistart"}};
    if (r.certificate)
        out["certificate"] = {{"re", r.certificate->re()},
                              {"im", r.certificate->im()}};
    return out;
}

Json to_json(const HMEstimate& e) {
    return Json{{"escape_probability", e.escape_probability},
                {"std_error", e.std_error},
                {"walks", e.walks},
                {"escaped", e.escaped},
                {"captured", e.captured},
                {"stalled", e.stalled},
                {"seed", e.seed},
                {"eps_shell", e.eps_shell}};
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

Json to_json(const RunManifest& m) {
    return Json{{"command", m.command}, {"parameters", m.parameters},
                {"seed", m.seed},       {"depth", m.depth},
                {"version", m.version}, {"timestamp", m.timestamp}};
}

Json wrap_report(const RunManifest& m, Json result) {
    return Json{{"manifest", to_json(m)}, {"result", std::move(result)}};
}

std::string hashable_section(const Json& report) {
    Json copy = report;
    if (copy.contains("manifest") && copy["manifest"].contains("timestamp"))
        copy["manifest"].erase("timestamp");
    return copy.dump(2);
}

}  // namespace nevsamp
