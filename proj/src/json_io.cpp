#include "ksvi/json_io.hpp"

#include <sstream>

namespace ksvi {

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

Json ray_to_json(const Ray& r) {
    Json j;
    if (r.is_exact()) {
        const Vec3i& c = r.exact().c;
        j["exact"] = {c[0], c[1], c[2]};
    } else {
        const Vec3c& c = r.num().components();
        Json arr = Json::array();
        for (const Complex& z : c) {
            arr.push_back({z.real(), z.imag()});
        }
        j["numeric"] = arr;
    }
    return j;
}

Ray ray_from_json(const Json& j) {
    if (!j.is_object()) {
        throw ParseError("ray must be an object with 'exact' or 'numeric'");
    }
    if (j.contains("exact")) {
        const Json& a = j["exact"];
        if (!a.is_array() || a.size() != 3) {
            throw ParseError("'exact' ray needs three integer components");
        }
        for (const auto& x : a) {
            if (!x.is_number_integer()) {
                throw ParseError("'exact' ray components must be integers");
            }
        }
        return Ray(canonicalize_ray(
            {a[0].get<long long>(), a[1].get<long long>(), a[2].get<long long>()}));
    }
    if (j.contains("numeric")) {
        const Json& a = j["numeric"];
        if (!a.is_array() || a.size() != 3) {
            throw ParseError("'numeric' ray needs three [re,im] components");
        }
        Vec3c v;
        for (size_t i = 0; i < 3; ++i) {
            const Json& z = a[i];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw ParseError("'numeric' ray components must be [re,im] pairs");
            }
            v[i] = Complex(z[0].get<double>(), z[1].get<double>());
        }
        return Ray(NumRay::canonical(v));
    }
    throw ParseError("ray object needs an 'exact' or 'numeric' key");
}

std::string save_hypergraph(const Hypergraph& h) {
    Json j;
    j["dimension"] = h.dimension();
    Json obs = Json::array();
    for (const Observable& o : h.observables()) {
        Json e;
        e["id"] = o.id;
        e["ray"] = ray_to_json(o.ray);
        obs.push_back(std::move(e));
    }
    j["observables"] = std::move(obs);
    Json ctx = Json::array();
    for (const Context& c : h.contexts()) {
        Json e;
        e["id"] = c.id;
        e["members"] = c.members;
        ctx.push_back(std::move(e));
    }
    j["contexts"] = std::move(ctx);
    return j.dump(2) + "\n";
}

LoadedHypergraph load_hypergraph(const std::string& document) {
    Json j = parse_json(document);
    if (!j.is_object()) {
        throw ParseError("hypergraph document must be a JSON object");
    }
    if (!j.contains("observables")) {
        throw ParseError("document missing 'observables'");
    }
    if (!j.contains("contexts")) {
        throw ParseError("document missing 'contexts'");
    }
    if (j.contains("dimension") &&
        (!j["dimension"].is_number_integer() || j["dimension"].get<int>() != 3)) {
        throw ParseError("only dimension 3 is supported");
    }
    LoadedHypergraph out;
    for (const Json& e : j["observables"]) {
        if (!e.is_object() || !e.contains("id") || !e.contains("ray") ||
            !e["id"].is_string()) {
            throw ParseError("observable entries need 'id' and 'ray'");
        }
        out.hypergraph.add_observable(e["id"].get<std::string>(),
                                      ray_from_json(e["ray"]));
    }
    for (const Json& e : j["contexts"]) {
        if (!e.is_object() || !e.contains("id") || !e.contains("members") ||
            !e["id"].is_string() || !e["members"].is_array()) {
            throw ParseError("context entries need 'id' and 'members'");
        }
        std::vector<std::string> members;
        for (const Json& m : e["members"]) {
            if (!m.is_string()) {
                throw ParseError("context members must be observable ids");
            }
            members.push_back(m.get<std::string>());
        }
        out.hypergraph.add_context(e["id"].get<std::string>(), members);
    }
    out.report = validate(out.hypergraph);
    for (const auto& [alias, primary] : out.hypergraph.aliases()) {
        out.report.notes.push_back("observable '" + alias + "' merged into '" +
                                   primary + "' (projectively equal rays)");
    }
    return out;
}

Json validation_report_to_json(const ValidationReport& r) {
    Json j;
    j["ok"] = r.ok();
    Json v = Json::array();
    for (const Violation& x : r.violations) {
        v.push_back({{"where", x.where}, {"what", x.what}});
    }
    j["violations"] = std::move(v);
    j["notes"] = r.notes;
    return j;
}

Json assignment_to_json(const Assignment& a) {
    Json entries = Json::array();
    for (const auto& [key, value] : a.values) {
        Json e;
        e["observable"] = key.first;
        e["context"] = key.second;
        e["value"] = value;
        entries.push_back(std::move(e));
    }
    Json j;
    j["entries"] = std::move(entries);
    return j;
}

Assignment assignment_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
        throw ParseError("assignment document needs an 'entries' array");
    }
    Assignment a;
    for (const Json& e : j["entries"]) {
        if (!e.is_object() || !e.contains("observable") || !e.contains("context") ||
            !e.contains("value")) {
            throw ParseError("assignment entries need observable/context/value");
        }
        int v = e["value"].get<int>();
        if (v != 0 && v != 1) {
            throw ParseError("assignment values must be 0 or 1");
        }
        a.set(e["observable"].get<std::string>(), e["context"].get<std::string>(), v);
    }
    return a;
}

Json trace_to_json(const PropagationTrace& t) {
    Json j;
    j["status"] = t.contradiction ? "contradiction" : "fixpoint";
    if (t.contradiction) {
        j["context"] = t.context;
        j["conflict"] = conflict_name(t.conflict);
        j["detail"] = t.detail;
    }
    Json steps = Json::array();
    for (const TraceStep& s : t.steps) {
        Json e;
        e["rule"] = rule_name(s.rule);
        e["context"] = s.context;
        Json derived = Json::array();
        for (const TraceEntry& d : s.derived) {
            derived.push_back({{"observable", d.observable},
                               {"context", d.context},
                               {"value", d.value}});
        }
        e["derived"] = std::move(derived);
        steps.push_back(std::move(e));
    }
    j["steps"] = std::move(steps);
    return j;
}

std::string trace_to_text(const PropagationTrace& t) {
    std::ostringstream os;
    for (const TraceStep& s : t.steps) {
        os << s.context << " [" << rule_name(s.rule) << "]";
        for (const TraceEntry& d : s.derived) {
            os << " v(" << d.observable << "," << d.context << ")=" << d.value;
        }
        os << "\n";
    }
    if (t.contradiction) {
        os << "contradiction in " << t.context << " (" << conflict_name(t.conflict)
           << "): " << t.detail << "\n";
    } else {
        os << "fixpoint\n";
    }
    return os.str();
}

Json matrix_to_json(const UnitaryMatrix& u) {
    Json rows = Json::array();
    for (int i = 0; i < u.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < u.n(); ++j) {
            Complex z = u.at(i, j);
            row.push_back({z.real(), z.imag()});
        }
        rows.push_back(std::move(row));
    }
    Json j;
    j["n"] = u.n();
    j["entries"] = std::move(rows);
    return j;
}

UnitaryMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
        throw ParseError("matrix document needs 'n' and 'entries'");
    }
    int n = j["n"].get<int>();
    if (n <= 0) {
        throw ParseError("matrix dimension must be positive");
    }
    const Json& rows = j["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
        throw ParseError("matrix needs n rows");
    }
    std::vector<Complex> entries;
    entries.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (const Json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ParseError("matrix rows need n entries");
        }
        for (const Json& z : row) {
            if (!z.is_array() || z.size() != 2) {
                throw ParseError("matrix entries must be [re,im] pairs");
            }
            entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    return UnitaryMatrix::from_entries(n, std::move(entries));
}

Json decomposition_to_json(const Decomposition& d) {
    Json stages = Json::array();
    for (const BeamSplitterStage& s : d.stages) {
        Json e;
        e["ports"] = {s.port_low, s.port_high};
        e["transmittance"] = s.transmittance;
        e["phase"] = s.phase;
        stages.push_back(std::move(e));
    }
    Json j;
    j["stages"] = std::move(stages);
    j["final_phases"] = d.final_phases;
    return j;
}

Json certificate_to_json(const Certificate& c) {
    Json j;
    j["psi"] = ray_to_json(Ray(c.psi));
    j["phi"] = ray_to_json(Ray(c.phi));
    j["overlap"] = c.overlap;
    j["window_ok"] = c.window_ok;
    j["outcome"] = c.outcome == CertOutcome::ValueIndefinite ? "value-indefinite"
                                                             : "window-violated";
    if (c.instance) {
        Json ids;
        ids["a"] = c.instance->a_id;
        ids["b"] = c.instance->b_id;
        ids["c"] = c.instance->c_id;
        ids["alpha"] = c.instance->alpha_id;
        ids["beta"] = c.instance->beta_id;
        ids["C1"] = c.instance->c1_id;
        ids["C2"] = c.instance->c2_id;
        j["distinguished"] = std::move(ids);
        j["witness"] = {{"phi_one", trace_to_json(c.branch_phi_one)},
                        {"phi_zero", trace_to_json(c.branch_phi_zero)}};
    }
    return j;
}

Json normality_report_to_json(const NormalityReport& r) {
    Json levels = Json::array();
    for (const NormalityLevel& level : r.levels) {
        Json blocks = Json::array();
        for (const BlockStat& b : level.blocks) {
            blocks.push_back({{"block", b.block},
                              {"count", b.count},
                              {"frequency", b.frequency},
                              {"deviation", b.deviation},
                              {"pass", b.pass}});
        }
        levels.push_back({{"k", level.k},
                          {"blocks_counted", level.n_blocks},
                          {"threshold", level.threshold},
                          {"pass", level.pass},
                          {"blocks", std::move(blocks)}});
    }
    Json j;
    j["kmax"] = r.kmax;
    j["pass"] = r.pass;
    j["levels"] = std::move(levels);
    return j;
}

} // namespace ksvi
