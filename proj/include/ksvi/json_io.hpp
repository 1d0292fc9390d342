#pragma once

#include <string>

#include <json.hpp>

#include "ksvi/assignment.hpp"
#include "ksvi/constructions.hpp"
#include "ksvi/hypergraph.hpp"
#include "ksvi/qrng.hpp"
#include "ksvi/reck.hpp"

namespace ksvi {

using Json = nlohmann::ordered_json;

// Rays: {"exact":[i,j,k]} or {"numeric":[[re,im],[re,im],[re,im]]}
Json ray_to_json(const Ray& r);
Ray ray_from_json(const Json& j);

// Hypergraphs:
// {"dimension":3,"observables":[{"id","ray"}...],"contexts":[{"id","members"}...]}
// save-load-save is byte identical; load validates and reports merges.
std::string save_hypergraph(const Hypergraph& h);
struct LoadedHypergraph {
    Hypergraph hypergraph;
    ValidationReport report;
};
LoadedHypergraph load_hypergraph(const std::string& document);

Json validation_report_to_json(const ValidationReport& r);

// Assignments: {"entries":[{"observable","context","value"}...]}
Json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const Json& j);

Json trace_to_json(const PropagationTrace& t);
std::string trace_to_text(const PropagationTrace& t);

// Matrices: {"n":int,"entries":[[[re,im],...],...]} row-major
Json matrix_to_json(const UnitaryMatrix& u);
UnitaryMatrix matrix_from_json(const Json& j);

Json decomposition_to_json(const Decomposition& d);

Json certificate_to_json(const Certificate& c);

Json normality_report_to_json(const NormalityReport& r);

/// Parse with ParseError (including the byte offset nlohmann reports).
Json parse_json(const std::string& text);

} // namespace ksvi
