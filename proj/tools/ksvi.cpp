// ksvi — command-line front end: validation, the built-in 24-context
// instance, propagation/search, value-indefiniteness certificates, the
// spin-1 bit-stream simulator, and beam-splitter decomposition.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ksvi/assignment.hpp"
#include "ksvi/constructions.hpp"
#include "ksvi/hypergraph.hpp"
#include "ksvi/json_io.hpp"
#include "ksvi/qrng.hpp"
#include "ksvi/reck.hpp"

namespace {

using namespace ksvi;

constexpr int kExitOk = 0;
constexpr int kExitCheckedFailure = 1; // "the mathematics says no"
constexpr int kExitUsage = 2;          // bad invocation or I/O

// All artifacts go through temp-file + rename so partial writes never leave
// a broken file behind.
void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw Error("cannot open '" + tmp.string() + "' for writing");
        }
        os << content;
        if (!os.flush()) {
            throw Error("short write to '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw Error("cannot read '" + path + "'");
    }
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// "x,y,z" (numeric reals) or "exact:i,j,k"
Ray parse_ray(const std::string& text) {
    std::string body = text;
    bool exact = false;
    if (body.rfind("exact:", 0) == 0) {
        exact = true;
        body = body.substr(6);
    }
    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        parts.push_back(item);
    }
    if (parts.size() != 3) {
        throw Error("ray '" + text + "' needs three comma-separated components");
    }
    try {
        if (exact) {
            return Ray(canonicalize_ray({std::stoll(parts[0]), std::stoll(parts[1]),
                                         std::stoll(parts[2])}));
        }
        return Ray(NumRay::canonical({Complex(std::stod(parts[0])),
                                      Complex(std::stod(parts[1])),
                                      Complex(std::stod(parts[2]))}));
    } catch (const std::invalid_argument&) {
        throw Error("cannot parse ray component in '" + text + "'");
    } catch (const std::out_of_range&) {
        throw Error("ray component out of range in '" + text + "'");
    }
}

// "observable@context=value"; the observable id may itself contain commas
Seed parse_seed(const std::string& text) {
    size_t eq = text.rfind('=');
    if (eq == std::string::npos || eq + 1 >= text.size()) {
        throw Error("seed '" + text + "' must look like obs@ctx=0|1");
    }
    size_t at = text.rfind('@', eq);
    if (at == std::string::npos || at == 0) {
        throw Error("seed '" + text + "' must look like obs@ctx=0|1");
    }
    std::string value = text.substr(eq + 1);
    if (value != "0" && value != "1") {
        throw Error("seed value must be 0 or 1 in '" + text + "'");
    }
    return Seed{text.substr(0, at), text.substr(at + 1, eq - at - 1),
                value == "1" ? 1 : 0};
}

void emit_report(const std::string& path, const Json& j) {
    if (!path.empty()) {
        write_atomically(path, j.dump(2) + "\n");
    }
}

int cmd_validate(const std::string& file, const std::string& report_path) {
    LoadedHypergraph loaded = load_hypergraph(read_file(file));
    Json j = validation_report_to_json(loaded.report);
    std::string summary;
    if (loaded.report.ok()) {
        summary = "valid: " + std::to_string(loaded.hypergraph.observables().size()) +
                  " observables, " +
                  std::to_string(loaded.hypergraph.contexts().size()) + " contexts";
    } else {
        summary = "INVALID: " + std::to_string(loaded.report.violations.size()) +
                  " violation(s)";
    }
    j["summary"] = summary;
    emit_report(report_path, j);
    std::cout << summary << "\n";
    for (const Violation& v : loaded.report.violations) {
        std::cout << "  " << v.where << ": " << v.what << "\n";
    }
    for (const std::string& n : loaded.report.notes) {
        std::cout << "  note: " << n << "\n";
    }
    return loaded.report.ok() ? kExitOk : kExitCheckedFailure;
}

int cmd_table1(const std::string& dot_path, const std::string& json_path,
               bool overlay_theorem1, const std::string& report_path) {
    Hypergraph h = table1_hypergraph();
    if (!json_path.empty()) {
        write_atomically(json_path, save_hypergraph(h));
    }
    if (!dot_path.empty()) {
        if (overlay_theorem1) {
            auto [assignment, trace] =
                propagate(h, {{"1,0,0", "C1", 1}, {"3,2,1", "C2", 1}}, true);
            (void)trace;
            write_atomically(dot_path, export_greechie_dot(h, &assignment));
        } else {
            write_atomically(dot_path, export_greechie_dot(h));
        }
    }
    bool ok = validate(h).ok();
    std::string summary = "table1: " + std::to_string(h.observables().size()) +
                          " observables, " + std::to_string(h.contexts().size()) +
                          " contexts, validation " + (ok ? "clean" : "BROKEN");
    Json j;
    j["observables"] = h.observables().size();
    j["contexts"] = h.contexts().size();
    j["validation_ok"] = ok;
    j["summary"] = summary;
    emit_report(report_path, j);
    std::cout << summary << "\n";
    return kExitOk;
}

int cmd_propagate(const std::string& file, const std::vector<std::string>& seed_args,
                  bool contextual, const std::string& out_path,
                  const std::string& trace_path) {
    LoadedHypergraph loaded = load_hypergraph(read_file(file));
    std::vector<Seed> seeds;
    for (const std::string& s : seed_args) {
        seeds.push_back(parse_seed(s));
    }
    auto [assignment, trace] = propagate(loaded.hypergraph, seeds, !contextual);
    if (!out_path.empty()) {
        write_atomically(out_path, assignment_to_json(assignment).dump(2) + "\n");
    }
    if (!trace_path.empty()) {
        Json j = trace_to_json(trace);
        j["text"] = trace_to_text(trace);
        write_atomically(trace_path, j.dump(2) + "\n");
    }
    if (trace.contradiction) {
        std::cout << "contradiction in " << trace.context << " ("
                  << conflict_name(trace.conflict) << "): " << trace.detail << "\n";
        return kExitCheckedFailure;
    }
    std::cout << "fixpoint: " << assignment.size() << " pairs defined after "
              << trace.steps.size() << " steps\n";
    return kExitOk;
}

int cmd_search(const std::string& file, const std::vector<std::string>& seed_args,
               bool contextual, bool do_count, long long cap,
               const std::string& out_path, const std::string& report_path) {
    LoadedHypergraph loaded = load_hypergraph(read_file(file));
    std::vector<Seed> seeds;
    for (const std::string& s : seed_args) {
        seeds.push_back(parse_seed(s));
    }
    SearchMode mode = contextual ? SearchMode::ContextualAllowed
                                 : SearchMode::NoncontextualValueDefinite;
    Json j;
    j["mode"] = contextual ? "contextual" : "noncontextual-value-definite";
    if (do_count) {
        CountResult r = count_completions(loaded.hypergraph, seeds, mode, cap);
        std::string summary = "completions: " +
                              std::string(r.capped ? ">= " : "") +
                              std::to_string(r.count);
        j["count"] = r.count;
        j["capped"] = r.capped;
        j["summary"] = summary;
        emit_report(report_path, j);
        std::cout << summary << "\n";
        return kExitOk;
    }
    auto result = search_completion(loaded.hypergraph, seeds, mode);
    j["found"] = result.has_value();
    if (!result) {
        j["summary"] = "no completion exists";
        emit_report(report_path, j);
        std::cout << "no completion exists\n";
        return kExitCheckedFailure;
    }
    if (!out_path.empty()) {
        write_atomically(out_path, assignment_to_json(*result).dump(2) + "\n");
    }
    std::string summary =
        "completion found: " + std::to_string(result->size()) + " pairs";
    j["pairs"] = static_cast<long long>(result->size());
    j["summary"] = summary;
    emit_report(report_path, j);
    std::cout << summary << "\n";
    return kExitOk;
}

int cmd_verify_ks_table(const std::string& trace_path, const std::string& report_path,
                        const std::string& dot_path) {
    try {
        PropagationTrace trace = verify_theorem1();
        if (!trace_path.empty()) {
            Json j = trace_to_json(trace);
            j["text"] = trace_to_text(trace);
            write_atomically(trace_path, j.dump(2) + "\n");
        }
        if (!dot_path.empty()) {
            Hypergraph h = table1_hypergraph();
            auto [assignment, t2] =
                propagate(h, {{"1,0,0", "C1", 1}, {"3,2,1", "C2", 1}}, true);
            (void)t2;
            write_atomically(dot_path, export_greechie_dot(h, &assignment));
        }
        std::string summary = "contradiction located in " + trace.context +
                              " (" + conflict_name(trace.conflict) +
                              "); all observable values match the reference labels";
        Json j;
        j["ok"] = true;
        j["summary"] = summary;
        j["context"] = trace.context;
        j["conflict"] = conflict_name(trace.conflict);
        emit_report(report_path, j);
        std::cout << summary << "\n";
        return kExitOk;
    } catch (const TheoremCheckFailed& e) {
        Json j;
        j["ok"] = false;
        j["summary"] = std::string("theorem check failed: ") + e.what();
        emit_report(report_path, j);
        std::cout << "theorem check failed: " << e.what() << "\n";
        return kExitCheckedFailure;
    }
}

int cmd_certify(const std::string& psi_text, const std::string& phi_text,
                const std::string& instance_path, const std::string& trace_path,
                const std::string& report_path) {
    Certificate cert = certify_value_indefinite(parse_ray(psi_text), parse_ray(phi_text));
    char overlap_buf[64];
    std::snprintf(overlap_buf, sizeof overlap_buf, "%.9f", cert.overlap);
    std::string summary;
    if (cert.outcome == CertOutcome::ValueIndefinite) {
        summary = std::string("VALUE INDEFINITE: |<psi|phi>| = ") + overlap_buf +
                  " lies in [sqrt(5/14), 3/sqrt(14)]; both definite values refuted";
    } else {
        summary = std::string("window violated: |<psi|phi>| = ") + overlap_buf +
                  " outside [sqrt(5/14), 3/sqrt(14)]; no certificate";
    }
    Json j = certificate_to_json(cert);
    j["summary"] = summary;
    emit_report(report_path, j);
    if (cert.instance && !instance_path.empty()) {
        write_atomically(instance_path, save_hypergraph(cert.instance->h));
    }
    if (cert.instance && !trace_path.empty()) {
        Json t;
        t["phi_one"] = trace_to_json(cert.branch_phi_one);
        t["phi_zero"] = trace_to_json(cert.branch_phi_zero);
        write_atomically(trace_path, t.dump(2) + "\n");
    }
    std::cout << summary << "\n";
    return cert.outcome == CertOutcome::ValueIndefinite ? kExitOk : kExitCheckedFailure;
}

int cmd_reduce(const std::string& a_text, const std::string& b_text,
               const std::string& report_path) {
    Ray a = parse_ray(a_text);
    Ray b = parse_ray(b_text);
    ReductionResult r = reduce_to_equality(a, b);
    Json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["x"] = r.x;
    j["y"] = r.y;
    j["z"] = r.z;
    j["c"] = ray_to_json(Ray(r.c));
    j["alpha"] = ray_to_json(Ray(r.alpha));
    j["beta"] = ray_to_json(Ray(r.beta));
    j["psi"] = ray_to_json(Ray(r.psi));
    j["phi"] = ray_to_json(Ray(r.phi));
    double ac = overlap_magnitude(a, Ray(r.c));
    j["overlap_a_c"] = ac;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "reduced: p=%.9f q=%.9f y=%.9f z=%.9f |<a|c>|=%.9f", r.p, r.q,
                  r.y, r.z, ac);
    j["summary"] = buf;
    emit_report(report_path, j);
    std::cout << buf << "\n";
    return kExitOk;
}

int cmd_qrng(double theta, double phi, long long n, uint64_t seed,
             const std::string& out_path, bool debias, int normality_kmax,
             const std::string& report_path) {
    BitStream stream = simulate_bits(theta, phi, n, seed);
    std::vector<uint8_t> emitted =
        debias ? von_neumann_debias(stream.bits) : stream.bits;

    std::string text(emitted.size(), '0');
    for (size_t i = 0; i < emitted.size(); ++i) {
        text[i] = emitted[i] ? '1' : '0';
    }
    text += '\n';
    if (!out_path.empty()) {
        write_atomically(out_path, text);
    }

    bool window = certification_window(theta);
    double monitor_ratio =
        stream.draws() > 0
            ? static_cast<double>(stream.count_zero) / static_cast<double>(stream.draws())
            : 0.0;
    Json j;
    j["theta"] = theta;
    j["phi"] = phi;
    j["requested"] = n;
    j["seed"] = seed;
    j["counts"] = {{"plus", stream.count_plus},
                   {"zero", stream.count_zero},
                   {"minus", stream.count_minus}};
    j["monitor_ratio"] = monitor_ratio;
    j["within_certification_window"] = window;
    j["debiased"] = debias;
    j["emitted_bits"] = static_cast<long long>(emitted.size());

    bool normality_ok = true;
    if (normality_kmax > 0) {
        NormalityReport rep = borel_normality_test(emitted, normality_kmax);
        j["normality"] = normality_report_to_json(rep);
        normality_ok = rep.pass;
    }

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%lld bits (theta=%.6f): +1/0/-1 = %lld/%lld/%lld, monitor ratio "
                  "%.6f, %s certification window%s",
                  static_cast<long long>(emitted.size()), theta, stream.count_plus,
                  stream.count_zero, stream.count_minus, monitor_ratio,
                  window ? "within" : "OUTSIDE",
                  normality_kmax > 0 ? (normality_ok ? ", normality pass" : ", normality FAIL")
                                     : "");
    j["summary"] = buf;
    emit_report(report_path, j);
    std::cout << buf << "\n";
    return normality_ok ? kExitOk : kExitCheckedFailure;
}

int cmd_decompose(const std::string& matrix_path, bool check_ux,
                  const std::string& report_path) {
    Json report;
    int rc = kExitOk;
    std::ostringstream out;

    auto print_decomposition = [&](const Decomposition& d) {
        out << "stages (ports, T, phase):\n";
        for (const BeamSplitterStage& s : d.stages) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "  (%d,%d)  T=%.9f  phase=%+.9f\n",
                          s.port_low, s.port_high, s.transmittance, s.phase);
            out << buf;
        }
        out << "final phases:";
        for (double p : d.final_phases) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %+.9f", p);
            out << buf;
        }
        out << "\n";
    };

    if (!matrix_path.empty()) {
        UnitaryMatrix u = matrix_from_json(parse_json(read_file(matrix_path)));
        Decomposition d = decompose(u);
        UnitaryMatrix rec = reconstruct(d, u.n());
        double err = rec.max_abs_difference(u);
        print_decomposition(d);
        char buf[64];
        std::snprintf(buf, sizeof buf, "reconstruction error %.3e\n", err);
        out << buf;
        report["decomposition"] = decomposition_to_json(d);
        report["reconstruction_error"] = err;
    }

    if (check_ux) {
        UnitaryMatrix ux = ux_reference();
        Decomposition d = decompose(ux);
        print_decomposition(d);
        double rec_err = reconstruct(d, 3).max_abs_difference(ux);
        const double pi = std::acos(-1.0);
        // reference values: T = (1/3, 3/4, 1/3) on beams (2,1), (3,1), (3,2),
        // phases (-pi/2, pi, -pi/2), final phases (0, -pi/2, -pi/2)
        auto close = [](double a, double b) { return std::fabs(a - b) < 1e-9; };
        bool ok = d.stages.size() == 3 && d.final_phases.size() == 3 &&
                  d.stages[0].port_low == 1 && d.stages[0].port_high == 2 &&
                  d.stages[1].port_low == 1 && d.stages[1].port_high == 3 &&
                  d.stages[2].port_low == 2 && d.stages[2].port_high == 3 &&
                  close(d.stages[0].transmittance, 1.0 / 3.0) &&
                  close(d.stages[1].transmittance, 3.0 / 4.0) &&
                  close(d.stages[2].transmittance, 1.0 / 3.0) &&
                  close(d.stages[0].phase, -pi / 2.0) &&
                  close(d.stages[1].phase, pi) &&
                  close(d.stages[2].phase, -pi / 2.0) &&
                  close(d.final_phases[0], 0.0) &&
                  close(d.final_phases[1], -pi / 2.0) &&
                  close(d.final_phases[2], -pi / 2.0) && rec_err < 1e-12;
        char buf[96];
        std::snprintf(buf, sizeof buf, "x-gate factorization check: %s (reconstruction %.3e)\n",
                      ok ? "PASS" : "FAIL", rec_err);
        out << buf;
        report["check_ux"] = ok;
        report["check_ux_reconstruction_error"] = rec_err;
        if (!ok) {
            rc = kExitCheckedFailure;
        }
    }

    report["summary"] = out.str();
    emit_report(report_path, report);
    std::cout << out.str();
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ksvi: located value indefiniteness toolkit"};
    app.require_subcommand(1);

    // validate
    std::string v_file, v_report;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a hypergraph document");
    validate_cmd->add_option("file", v_file, "hypergraph JSON")->required();
    validate_cmd->add_option("--report", v_report, "write JSON report");

    // table1
    std::string t_dot, t_json, t_report;
    bool t_overlay = false;
    CLI::App* table1_cmd =
        app.add_subcommand("table1", "emit the built-in 24-context instance");
    table1_cmd->add_option("--export-dot", t_dot, "write Greechie diagram (DOT)");
    table1_cmd->add_option("--export-json", t_json, "write hypergraph JSON");
    table1_cmd->add_flag("--overlay-theorem1", t_overlay,
                         "overlay the propagated value assignment on the DOT export");
    table1_cmd->add_option("--report", t_report, "write JSON report");

    // propagate
    std::string p_file, p_out, p_trace;
    std::vector<std::string> p_seeds;
    bool p_contextual = false;
    CLI::App* propagate_cmd =
        app.add_subcommand("propagate", "close seeds under the admissibility rules");
    propagate_cmd->add_option("file", p_file, "hypergraph JSON")->required();
    propagate_cmd->add_option("--seed", p_seeds, "seed as obs@ctx=0|1 (repeatable)");
    propagate_cmd->add_flag("--contextual", p_contextual,
                            "per-pair values; no noncontextual transfer");
    propagate_cmd->add_option("--out", p_out, "write resulting assignment JSON");
    propagate_cmd->add_option("--trace", p_trace, "write propagation trace JSON");

    // search
    std::string s_file, s_out, s_report;
    std::vector<std::string> s_seeds;
    bool s_contextual = false, s_count = false;
    long long s_cap = 10000000;
    CLI::App* search_cmd =
        app.add_subcommand("search", "find or count admissible completions");
    search_cmd->add_option("file", s_file, "hypergraph JSON")->required();
    search_cmd->add_option("--seed", s_seeds, "seed as obs@ctx=0|1 (repeatable)");
    search_cmd->add_flag("--contextual", s_contextual, "contextual completions");
    search_cmd->add_flag("--count", s_count, "count completions instead of searching");
    search_cmd->add_option("--cap", s_cap, "counting cap");
    search_cmd->add_option("--out", s_out, "write found assignment JSON");
    search_cmd->add_option("--report", s_report, "write JSON report");

    // verify-ks-table
    std::string k_trace, k_report, k_dot;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify-ks-table", "reproduce the 24-context contradiction");
    verify_cmd->add_option("--trace", k_trace, "write propagation trace JSON");
    verify_cmd->add_option("--report", k_report, "write JSON report");
    verify_cmd->add_option("--dot", k_dot, "write overlaid Greechie diagram (DOT)");

    // certify
    std::string c_psi, c_phi, c_instance, c_trace, c_report;
    CLI::App* certify_cmd = app.add_subcommand(
        "certify", "certify an observable pair as value indefinite");
    certify_cmd->add_option("--psi", c_psi, "prepared state ray (x,y,z or exact:i,j,k)")
        ->required();
    certify_cmd->add_option("--phi", c_phi, "measured projector ray")->required();
    certify_cmd->add_option("--emit-instance", c_instance, "write combined instance JSON");
    certify_cmd->add_option("--emit-trace", c_trace, "write both refutation traces");
    certify_cmd->add_option("--report", c_report, "write certificate JSON");

    // reduce
    std::string r_a, r_b, r_report;
    CLI::App* reduce_cmd =
        app.add_subcommand("reduce", "reduce an overlap to the boundary configuration");
    reduce_cmd->add_option("--a", r_a, "first ray")->required();
    reduce_cmd->add_option("--b", r_b, "second ray")->required();
    reduce_cmd->add_option("--report", r_report, "write JSON report");

    // qrng
    double q_theta = std::acos(-1.0) / 2.0, q_phi = 0.0;
    long long q_n = 0;
    uint64_t q_seed = 0;
    std::string q_out, q_report;
    bool q_debias = false;
    int q_normality = 0;
    CLI::App* qrng_cmd = app.add_subcommand("qrng", "simulate the spin-1 bit stream");
    qrng_cmd->add_option("--theta", q_theta, "polar angle (radians)");
    qrng_cmd->add_option("--phi", q_phi, "azimuthal angle (radians)");
    qrng_cmd->add_option("--n", q_n, "number of bits to emit")->required();
    qrng_cmd->add_option("--seed", q_seed, "PRNG seed");
    qrng_cmd->add_option("--out", q_out, "write bitstream ('0'/'1' characters)");
    qrng_cmd->add_flag("--debias", q_debias, "von Neumann debiasing before output");
    qrng_cmd->add_option("--normality", q_normality, "run block-frequency test up to kmax");
    qrng_cmd->add_option("--report", q_report, "write JSON report");

    // decompose
    std::string d_matrix, d_report;
    bool d_check_ux = false;
    CLI::App* decompose_cmd = app.add_subcommand(
        "decompose", "factor a unitary into beam-splitter stages");
    decompose_cmd->add_option("--matrix", d_matrix, "matrix JSON file");
    decompose_cmd->add_flag("--check-ux", d_check_ux,
                            "run the built-in x-gate factorization regression");
    decompose_cmd->add_option("--report", d_report, "write JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*validate_cmd) {
            return cmd_validate(v_file, v_report);
        }
        if (*table1_cmd) {
            return cmd_table1(t_dot, t_json, t_overlay, t_report);
        }
        if (*propagate_cmd) {
            return cmd_propagate(p_file, p_seeds, p_contextual, p_out, p_trace);
        }
        if (*search_cmd) {
            return cmd_search(s_file, s_seeds, s_contextual, s_count, s_cap, s_out,
                              s_report);
        }
        if (*verify_cmd) {
            return cmd_verify_ks_table(k_trace, k_report, k_dot);
        }
        if (*certify_cmd) {
            return cmd_certify(c_psi, c_phi, c_instance, c_trace, c_report);
        }
        if (*reduce_cmd) {
            return cmd_reduce(r_a, r_b, r_report);
        }
        if (*qrng_cmd) {
            if (q_n < 0) {
                std::cerr << "error: --n must be nonnegative\n";
                return kExitUsage;
            }
            return cmd_qrng(q_theta, q_phi, q_n, q_seed, q_out, q_debias,
                            q_normality, q_report);
        }
        if (*decompose_cmd) {
            if (d_matrix.empty() && !d_check_ux) {
                std::cerr << "error: decompose needs --matrix and/or --check-ux\n";
                return kExitUsage;
            }
            return cmd_decompose(d_matrix, d_check_ux, d_report);
        }
    } catch (const OutOfRange& e) {
        std::cout << "out of range: " << e.what() << "\n";
        return kExitCheckedFailure;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
