#include <doctest.h>

#include "ksvi/json_io.hpp"
#include "test_support.hpp"

using namespace ksvi;

TEST_CASE("ray JSON round trips") {
    Ray e(canonicalize_ray({3, 2, -13}));
    Ray back = ray_from_json(ray_to_json(e));
    CHECK(back.is_exact());
    CHECK(rays_equal(e, back));

    Ray n(NumRay::canonical({Complex(0.5, 0.25), Complex(-1, 0), Complex(0, 2)}));
    Ray nback = ray_from_json(ray_to_json(n));
    CHECK_FALSE(nback.is_exact());
    CHECK(rays_equal(n, nback));

    CHECK_THROWS_AS(ray_from_json(parse_json("{\"exact\":[1,2]}")), ParseError);
    CHECK_THROWS_AS(ray_from_json(parse_json("{\"exact\":[1.5,0,0]}")), ParseError);
    CHECK_THROWS_AS(ray_from_json(parse_json("{\"numeric\":[[1,0],[0,0]]}")), ParseError);
    CHECK_THROWS_AS(ray_from_json(parse_json("{}")), ParseError);
    CHECK_THROWS_AS(ray_from_json(parse_json("{\"exact\":[0,0,0]}")), ZeroVector);
}

TEST_CASE("hypergraph save / load / save is byte identical") {
    Hypergraph h = table1_hypergraph();
    std::string first = save_hypergraph(h);
    LoadedHypergraph loaded = load_hypergraph(first);
    CHECK(loaded.report.ok());
    CHECK(loaded.report.notes.empty());
    std::string second = save_hypergraph(loaded.hypergraph);
    CHECK(first == second);
    CHECK(loaded.hypergraph.observables().size() == 38);
    CHECK(loaded.hypergraph.contexts().size() == 24);

    // numeric instance round trips too
    Hypergraph star = ksvi::testing::seven_context_star();
    std::string s1 = save_hypergraph(star);
    std::string s2 = save_hypergraph(load_hypergraph(s1).hypergraph);
    CHECK(s1 == s2);
}

TEST_CASE("malformed hypergraph documents raise ParseError") {
    CHECK_THROWS_AS(load_hypergraph("{"), ParseError);
    CHECK_THROWS_AS(load_hypergraph("{\"observables\":[]}"), ParseError);
    CHECK_THROWS_AS(load_hypergraph("{\"contexts\":[]}"), ParseError);
    CHECK_THROWS_AS(load_hypergraph("{\"dimension\":4,\"observables\":[],\"contexts\":[]}"),
                    ParseError);
    CHECK_THROWS_AS(
        load_hypergraph("{\"observables\":[{\"id\":\"x\"}],\"contexts\":[]}"),
        ParseError);
}

TEST_CASE("loading merges duplicate projective rays and notes the alias") {
    std::string doc = R"({
      "dimension": 3,
      "observables": [
        {"id": "x", "ray": {"exact": [1, 0, 0]}},
        {"id": "x2", "ray": {"exact": [2, 0, 0]}},
        {"id": "y", "ray": {"exact": [0, 1, 0]}},
        {"id": "z", "ray": {"exact": [0, 0, 1]}}
      ],
      "contexts": [
        {"id": "K", "members": ["x2", "y", "z"]}
      ]
    })";
    LoadedHypergraph loaded = load_hypergraph(doc);
    CHECK(loaded.report.ok());
    REQUIRE(loaded.report.notes.size() == 1);
    CHECK(loaded.report.notes[0].find("'x2' merged into 'x'") != std::string::npos);
    CHECK(loaded.hypergraph.observables().size() == 3);
    CHECK(loaded.hypergraph.context("K").members[0] == "x");
    // dedup soundness: no two observables projectively equal
    const auto& obs = loaded.hypergraph.observables();
    for (size_t i = 0; i < obs.size(); ++i) {
        for (size_t j = i + 1; j < obs.size(); ++j) {
            CHECK_FALSE(rays_equal(obs[i].ray, obs[j].ray));
        }
    }
}

TEST_CASE("invariant breaches load fine and land in the report") {
    std::string doc = R"({
      "observables": [
        {"id": "x", "ray": {"exact": [1, 0, 0]}},
        {"id": "y", "ray": {"exact": [1, 1, 0]}},
        {"id": "z", "ray": {"exact": [0, 0, 1]}}
      ],
      "contexts": [{"id": "K", "members": ["x", "y", "z"]}]
    })";
    LoadedHypergraph loaded = load_hypergraph(doc);
    CHECK_FALSE(loaded.report.ok());
    CHECK(loaded.report.violations.size() == 1);
}

TEST_CASE("assignment JSON round trips") {
    Assignment a;
    a.set("1,0,0", "C1", 1);
    a.set("0,1,0", "C1", 0);
    Assignment back = assignment_from_json(assignment_to_json(a));
    CHECK(back.values == a.values);
    CHECK_THROWS_AS(assignment_from_json(parse_json("{}")), ParseError);
    CHECK_THROWS_AS(
        assignment_from_json(parse_json(
            "{\"entries\":[{\"observable\":\"x\",\"context\":\"C\",\"value\":2}]}")),
        ParseError);
}

TEST_CASE("trace JSON carries status, conflict and steps") {
    Hypergraph h = table1_hypergraph();
    auto [a, t] = propagate(h, {{"1,0,0", "C1", 1}, {"3,2,1", "C2", 1}}, true);
    Json j = trace_to_json(t);
    CHECK(j["status"] == "contradiction");
    CHECK(j["context"] == "C24");
    CHECK(j["conflict"] == "all-zeros");
    CHECK(j["steps"].size() == t.steps.size());
    std::string text = trace_to_text(t);
    CHECK(text.find("contradiction in C24") != std::string::npos);
}

TEST_CASE("matrix JSON round trips") {
    UnitaryMatrix ux = ux_reference();
    UnitaryMatrix back = matrix_from_json(matrix_to_json(ux));
    CHECK(back.n() == 3);
    CHECK(back.max_abs_difference(ux) == 0.0);
    CHECK_THROWS_AS(matrix_from_json(parse_json("{\"n\":2}")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(parse_json("{\"n\":2,\"entries\":[[[1,0]]]}")),
                    ParseError);
}
