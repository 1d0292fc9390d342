// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ksvi/assignment.hpp"
#include "ksvi/constructions.hpp"
#include "ksvi/hypergraph.hpp"
#include "ksvi/json_io.hpp"
#include "ksvi/qrng.hpp"
#include "ksvi/reck.hpp"
#include "test_support.hpp"

using namespace ksvi;
namespace fs = std::filesystem;

namespace {

const double kPi = std::acos(-1.0);

struct Check {
    bool pass = true;
    std::string note;
    long long checks = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) {
            pass = false;
            note = what;
        }
    }
};

std::string run_command(const std::string& cmd, int* exit_code) {
    std::string out;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (pipe == nullptr) {
        *exit_code = -1;
        return out;
    }
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, got);
    }
    int status = pclose(pipe);
    *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// ---- criterion bodies -----------------------------------------------------

Check criterion1_table_integrity() {
    Check c;
    Hypergraph h = table1_hypergraph();
    c.expect(h.contexts().size() == 24, "expected 24 contexts");
    c.expect(h.observables().size() == 38, "expected 38 observables");
    for (const Context& ctx : h.contexts()) {
        c.expect(ctx.members.size() == 3, ctx.id + " arity");
        for (size_t i = 0; i < ctx.members.size(); ++i) {
            for (size_t j = i + 1; j < ctx.members.size(); ++j) {
                long long d = dot_exact(h.observable(ctx.members[i]).ray.exact(),
                                        h.observable(ctx.members[j]).ray.exact());
                c.expect(d == 0, ctx.id + ": <" + ctx.members[i] + "|" +
                                     ctx.members[j] + "> = " + std::to_string(d));
            }
        }
    }
    c.expect(validate(h).ok(), "validation report not empty");
    return c;
}

Check criterion2_contradiction_walk() {
    Check c;
    Hypergraph h = table1_hypergraph();
    auto [assignment, trace] =
        propagate(h, {{"1,0,0", "C1", 1}, {"3,2,1", "C2", 1}}, true);
    c.expect(trace.contradiction, "no contradiction reached");
    c.expect(trace.context == "C24", "contradiction in " + trace.context);
    c.expect(trace.conflict == Conflict::AllZeros,
             std::string("conflict shape ") + conflict_name(trace.conflict));
    std::vector<std::string> want{"1,1,-1", "1,-1,0", "1,1,2"};
    const Context& c24 = h.context("C24");
    for (const std::string& m : want) {
        c.expect(std::find(c24.members.begin(), c24.members.end(), m) !=
                     c24.members.end(),
                 "C24 missing " + m);
    }
    for (const auto& [id, expected] : table1_reference_labels()) {
        for (const std::string& cid : h.star_contexts(id)) {
            auto got = assignment.get(id, cid);
            c.expect(got.has_value() && *got == expected,
                     "value of (" + id + "," + cid + ") off reference");
        }
    }
    try {
        verify_theorem1();
    } catch (const std::exception& e) {
        c.expect(false, std::string("verify_theorem1: ") + e.what());
    }
    return c;
}

Check criterion3_oracle_equivalence() {
    Check c;
    Hypergraph full = table1_hypergraph();
    const auto& ctxs = full.contexts();
    long long mismatches = 0;

    for (int k = 1; k <= 6 && c.pass; ++k) {
        const long long cap = k <= 3 ? 1000000 : 1; // exact counts while cheap
        std::vector<int> pick(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            pick[static_cast<size_t>(i)] = i;
        }
        while (true) {
            Hypergraph sub;
            for (int ci : pick) {
                std::vector<std::string> members;
                for (const std::string& m : ctxs[static_cast<size_t>(ci)].members) {
                    members.push_back(sub.add_observable(m, full.observable(m).ray));
                }
                sub.add_context(ctxs[static_cast<size_t>(ci)].id, members);
            }
            Solver solver(sub);
            std::vector<Seed> singles;
            for (const Context& ctx : sub.contexts()) {
                for (const std::string& oid : ctx.members) {
                    singles.push_back({oid, ctx.id, 0});
                    singles.push_back({oid, ctx.id, 1});
                }
            }
            auto agree = [&](const std::vector<Seed>& seeds) {
                bool exists = solver.completion_exists(
                    seeds, SearchMode::NoncontextualValueDefinite);
                CountResult r =
                    solver.count(seeds, SearchMode::NoncontextualValueDefinite, cap);
                ++c.checks;
                if (exists != (r.count > 0)) {
                    ++mismatches;
                }
                if (k <= 2) {
                    bool cexists =
                        solver.completion_exists(seeds, SearchMode::ContextualAllowed);
                    CountResult cr =
                        solver.count(seeds, SearchMode::ContextualAllowed, 1000000);
                    ++c.checks;
                    if (cexists != (cr.count > 0)) {
                        ++mismatches;
                    }
                }
            };
            agree({});
            for (size_t i = 0; i < singles.size(); ++i) {
                agree({singles[i]});
                for (size_t j = i + 1; j < singles.size(); ++j) {
                    if (singles[i].observable == singles[j].observable &&
                        singles[i].context == singles[j].context) {
                        continue; // same raw key: SeedConflict by precondition
                    }
                    agree({singles[i], singles[j]});
                }
            }
            // next k-combination of {0..23}
            int pos = k - 1;
            while (pos >= 0 && pick[static_cast<size_t>(pos)] == 24 - k + pos) {
                --pos;
            }
            if (pos < 0) {
                break;
            }
            ++pick[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < k; ++i) {
                pick[static_cast<size_t>(i)] = pick[static_cast<size_t>(i - 1)] + 1;
            }
        }
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " disagreements");
    return c;
}

Check criterion4_star_construction() {
    Check c;
    auto exercise = [&](const Hypergraph& h, const std::string& name) {
        for (const Observable& o : h.observables()) {
            Assignment a = build_star_assignment(h, o.id);
            size_t total_pairs = 0;
            for (const Context& ctx : h.contexts()) {
                total_pairs += ctx.members.size();
            }
            c.expect(a.size() == total_pairs, name + "/" + o.id + ": not total");
            for (const std::string& cid : h.star_contexts(o.id)) {
                auto v = a.get(o.id, cid);
                c.expect(v.has_value() && *v == 1,
                         name + "/" + o.id + ": centre not 1 in " + cid);
            }
            auto [ok, problems] = is_admissible(h, a);
            c.expect(ok, name + "/" + o.id + ": " +
                             (problems.empty() ? "inadmissible" : problems.front()));
        }
    };
    exercise(table1_hypergraph(), "table1");
    exercise(ksvi::testing::seven_context_star(), "star");
    return c;
}

Check criterion5_reduction_identities() {
    Check c;
    SplitMix64 rng{20120522};
    const double x = 3.0 / std::sqrt(14.0);
    int tested = 0;
    while (tested < 1000) {
        NumRay a = ksvi::testing::random_real_ray(rng);
        NumRay b = ksvi::testing::random_real_ray(rng);
        double ov = overlap_magnitude(Ray(a), Ray(b));
        if (ov < 1e-9 || ov > x - 1e-9) {
            continue;
        }
        ++tested;
        ReductionResult r = reduce_to_equality(Ray(a), Ray(b));
        c.expect(std::fabs(overlap_magnitude(Ray(a), Ray(r.c)) - x) < 1e-9,
                 "|<a|c>| misses 3/sqrt(14)");
        c.expect(std::abs(inner_product(Ray(r.alpha), Ray(r.beta))) < 1e-9,
                 "<alpha|beta> != 0");
        c.expect(std::abs(inner_product(Ray(r.alpha), Ray(r.c))) < 1e-9,
                 "<alpha|c> != 0");
        c.expect(std::abs(inner_product(Ray(r.beta), Ray(r.c))) < 1e-9,
                 "<beta|c> != 0");
        c.expect(std::abs(inner_product(Ray(r.alpha), Ray(a))) < 1e-9,
                 "<alpha|a> != 0");
        c.expect(std::abs(inner_product(Ray(r.beta), Ray(b))) < 1e-9,
                 "<beta|b> != 0");
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double expect = i == j ? 1.0 : 0.0;
                c.expect(std::abs(inner_product(Ray(r.basis[static_cast<size_t>(i)]),
                                                Ray(r.basis[static_cast<size_t>(j)])) -
                                  Complex(expect)) < 1e-9,
                         "basis not orthonormal");
            }
        }
        const double s14 = std::sqrt(14.0);
        c.expect(std::abs(inner_product(Ray(r.basis[0]), Ray(r.c)) - Complex(3.0 / s14)) <
                     1e-9,
                 "c coordinate 1 off");
        c.expect(std::abs(inner_product(Ray(r.basis[1]), Ray(r.c)) - Complex(2.0 / s14)) <
                     1e-9,
                 "c coordinate 2 off");
        c.expect(std::abs(inner_product(Ray(r.basis[2]), Ray(r.c)) - Complex(1.0 / s14)) <
                     1e-9,
                 "c coordinate 3 off");
    }
    return c;
}

Check criterion6_certification() {
    Check c;
    Ray sz0(canonicalize_ray({0, 1, 0}));
    double r2 = std::sqrt(2.0);
    for (double sign : {1.0, -1.0}) {
        Ray sx(NumRay::canonical(
            {Complex(0.5), Complex(sign * r2 / 2.0), Complex(0.5)}));
        Certificate cert = certify_value_indefinite(sz0, sx);
        c.expect(cert.outcome == CertOutcome::ValueIndefinite, "not value indefinite");
        c.expect(std::fabs(cert.overlap - 1.0 / r2) < 1e-12, "overlap not 1/sqrt(2)");
        c.expect(cert.overlap >= std::sqrt(5.0 / 14.0) &&
                     cert.overlap <= 3.0 / std::sqrt(14.0),
                 "overlap outside window");
        c.expect(cert.branch_phi_one.contradiction, "phi=1 branch not refuted");
        c.expect(cert.branch_phi_zero.contradiction, "phi=0 branch not refuted");
    }
    return c;
}

Check criterion7_qrng_statistics() {
    Check c;
    {
        BitStream s = simulate_bits(kPi / 2.0, 0.0, 1000000, 42);
        c.expect(s.count_zero == 0, "monitor count not exactly 0 at pi/2");
        long long ones = 0;
        for (uint8_t b : s.bits) {
            ones += b;
        }
        double freq = static_cast<double>(ones) / 1e6;
        double sigma = 0.5 / std::sqrt(1e6);
        c.expect(std::fabs(freq - 0.5) <= 5.0 * sigma, "bit frequency beyond 5 sigma");
        NormalityReport rep = borel_normality_test(s.bits, 4);
        c.expect(rep.pass, "block frequencies beyond sqrt(log2(N)/N)");
    }
    {
        BitStream s = simulate_bits(kPi / 3.0, 0.0, 1000000, 42);
        double draws = static_cast<double>(s.draws());
        double ratio = static_cast<double>(s.count_zero) / draws;
        double sigma_ratio = std::sqrt(0.25 * 0.75 / draws);
        c.expect(std::fabs(ratio - 0.25) <= 5.0 * sigma_ratio,
                 "monitor ratio beyond 5 sigma of 1/4");
        long long ones = 0;
        for (uint8_t b : s.bits) {
            ones += b;
        }
        double freq = static_cast<double>(ones) / 1e6;
        double sigma = 0.5 / std::sqrt(1e6);
        c.expect(std::fabs(freq - 0.5) <= 5.0 * sigma,
                 "emitted bits beyond 5 sigma of balance");
        NormalityReport rep = borel_normality_test(s.bits, 4);
        c.expect(rep.pass, "pi/3 stream fails the block-frequency bound");
    }
    return c;
}

Check criterion8_window_equivalence() {
    Check c;
    Ray sz0(canonicalize_ray({0, 1, 0}));
    const double lo = kPi / 3.0, hi = 2.0 * kPi / 3.0;
    for (int i = 0; i < 1000; ++i) {
        double theta = lo + (hi - lo) * static_cast<double>(i) / 999.0;
        bool angle_window = certification_window(theta);
        auto eig = eigenbasis(spin_operator(theta, 0.0));
        bool overlap_window = in_certification_window(sz0, Ray(eig[0].vector)).inside;
        bool overlap_window_minus =
            in_certification_window(sz0, Ray(eig[2].vector)).inside;
        c.expect(angle_window == overlap_window, "disagreement at theta=" +
                                                     std::to_string(theta));
        c.expect(overlap_window == overlap_window_minus, "+1/-1 windows differ");
        c.expect(angle_window, "grid point outside the angle window");
    }
    return c;
}

Check criterion9_factorization() {
    Check c;
    UnitaryMatrix ux = ux_reference();
    Decomposition d = decompose(ux);
    c.expect(d.stages.size() == 3, "stage count");
    c.expect(d.final_phases.size() == 3, "final phase count");
    if (d.stages.size() == 3 && d.final_phases.size() == 3) {
        auto stage_ok = [&](int idx, int lo, int hi, double t, double phase) {
            const BeamSplitterStage& s = d.stages[static_cast<size_t>(idx)];
            c.expect(s.port_low == lo && s.port_high == hi, "stage ports");
            c.expect(std::fabs(s.transmittance - t) < 1e-9, "stage transmittance");
            double dphi = std::remainder(s.phase - phase, 2.0 * kPi);
            c.expect(std::fabs(dphi) < 1e-9, "stage phase");
        };
        stage_ok(0, 1, 2, 1.0 / 3.0, -kPi / 2.0);
        stage_ok(1, 1, 3, 3.0 / 4.0, kPi);
        stage_ok(2, 2, 3, 1.0 / 3.0, -kPi / 2.0);
        c.expect(std::fabs(d.final_phases[0] - 0.0) < 1e-9, "final phase 1");
        c.expect(std::fabs(d.final_phases[1] + kPi / 2.0) < 1e-9, "final phase 2");
        c.expect(std::fabs(d.final_phases[2] + kPi / 2.0) < 1e-9, "final phase 3");
    }
    c.expect(reconstruct(d, 3).max_abs_difference(ux) < 1e-12,
             "reconstruction misses the reference matrix");

    SplitMix64 rng{424242};
    for (int rep = 0; rep < 50; ++rep) {
        int n = 2 + static_cast<int>(rng.next() % 4); // 2..5
        UnitaryMatrix u = ksvi::testing::random_unitary(n, rng);
        Decomposition rd = decompose(u);
        c.expect(reconstruct(rd, n).max_abs_difference(u) < 1e-10,
                 "round trip above 1e-10 (n=" + std::to_string(n) + ")");
    }
    return c;
}

Check criterion10_cli_determinism() {
    Check c;
#ifdef KSVI_CLI_PATH
    std::string cli = KSVI_CLI_PATH;
#else
    std::string cli;
#endif
    if (cli.empty() || !fs::exists(cli)) {
        c.expect(false, "CLI binary not found at compile-time path");
        return c;
    }
    fs::path dir = fs::path("acceptance_scratch");
    fs::create_directories(dir);

    struct Invocation {
        std::string name;
        std::string args;
        std::vector<std::string> artifacts;
        int expected_exit;
    };
    std::vector<Invocation> runs{
        {"verify-ks-table",
         "verify-ks-table --trace {d}/trace.json --report {d}/verify.json",
         {"trace.json", "verify.json"},
         0},
        {"qrng",
         "qrng --theta 1.5707963267948966 --n 100000 --seed 42 --out {d}/bits.txt "
         "--normality 4 --report {d}/qrng.json",
         {"bits.txt", "qrng.json"},
         0},
        {"decompose", "decompose --check-ux --report {d}/reck.json", {"reck.json"}, 0},
    };
    for (const Invocation& inv : runs) {
        std::string args = inv.args;
        size_t at;
        while ((at = args.find("{d}")) != std::string::npos) {
            args.replace(at, 3, dir.string());
        }
        int code1 = 0, code2 = 0;
        std::string out1 = run_command(cli + " " + args, &code1);
        std::vector<std::string> bytes1;
        for (const std::string& a : inv.artifacts) {
            bytes1.push_back(slurp(dir / a));
        }
        std::string out2 = run_command(cli + " " + args, &code2);
        std::vector<std::string> bytes2;
        for (const std::string& a : inv.artifacts) {
            bytes2.push_back(slurp(dir / a));
        }
        c.expect(code1 == inv.expected_exit,
                 inv.name + ": exit " + std::to_string(code1));
        c.expect(code1 == code2, inv.name + ": exit codes differ across runs");
        c.expect(out1 == out2, inv.name + ": stdout differs across runs");
        for (size_t i = 0; i < inv.artifacts.size(); ++i) {
            c.expect(!bytes1[i].empty(), inv.name + ": empty " + inv.artifacts[i]);
            c.expect(bytes1[i] == bytes2[i],
                     inv.name + ": artifact " + inv.artifacts[i] + " differs");
        }
    }
    return c;
}

} // namespace

int main() {
    struct Criterion {
        int index;
        const char* title;
        double budget_seconds;
        std::function<Check()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "built-in instance integrity (exact orthogonality)", 1.0,
         criterion1_table_integrity},
        {2, "contradiction walk reaches C24 with reference values", 1.0,
         criterion2_contradiction_walk},
        {3, "search vs counting oracle on all small sub-instances", 300.0,
         criterion3_oracle_equivalence},
        {4, "star assignments exist for every observable", 10.0,
         criterion4_star_construction},
        {5, "reduction identities on 1000 random pairs", 30.0,
         criterion5_reduction_identities},
        {6, "value-indefiniteness certificates for the x-axis pair", 10.0,
         criterion6_certification},
        {7, "bit-stream statistics at pi/2 and pi/3", 60.0,
         criterion7_qrng_statistics},
        {8, "angle window vs overlap window on the certified grid", 10.0,
         criterion8_window_equivalence},
        {9, "beam-splitter factorization and round trips", 10.0,
         criterion9_factorization},
        {10, "byte-identical repeated CLI runs", 60.0, criterion10_cli_determinism},
    };

    int failures = 0;
    for (const Criterion& cr : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.body();
        } catch (const std::exception& e) {
            result.pass = false;
            result.note = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_budget = seconds < cr.budget_seconds;
        bool pass = result.pass && in_budget;
        std::printf("[%s] criterion %2d: %s (%lld checks, %.2fs/%.0fs)%s%s\n",
                    pass ? "PASS" : "FAIL", cr.index, cr.title, result.checks,
                    seconds, cr.budget_seconds,
                    result.note.empty() ? "" : (" — " + result.note).c_str(),
                    !in_budget ? " — over time budget" : "");
        failures += pass ? 0 : 1;
    }
    if (failures == 0) {
        std::printf("acceptance: all %zu criteria pass\n", criteria.size());
    } else {
        std::printf("acceptance: %d criteria FAILED\n", failures);
    }
    return failures;
}
