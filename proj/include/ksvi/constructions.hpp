#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ksvi/assignment.hpp"
#include "ksvi/hypergraph.hpp"

namespace ksvi {

struct LabeledTriple {
    std::string label;
    std::array<NumRay, 3> members;
};

/// Output of the reduction that turns an arbitrary overlap 0 < |<a|b>| <
/// 3/sqrt(14) into the exact-equality configuration.  All rays live in the
/// ambient space of the inputs; coordinates named in the comments refer to
/// the working basis {a, e2, e3} with b = (p, q, 0).
struct ReductionResult {
    double p;  // <a|b> after phase rotation
    double q;  // sqrt(1 - p^2)
    double x;  // 3/sqrt(14)
    double y;  // p (1 - x^2) / (q x)
    double z;  // sqrt(1 - x^2 - y^2)
    NumRay c;      // (x, y, z): the forced third observable, |<a|c>| = x
    NumRay alpha;  // a x c = (0, -z, y)
    NumRay beta;   // b x c = (q z, -p z, p y - q x)
    NumRay psi;    // (0, 2y - z, y + 2z) sqrt(14)/5
    NumRay phi;    // (0, y + 2z, z - 2y) sqrt(14)/5
    std::array<NumRay, 3> basis;          // {a, psi, phi}; c = (3,2,1)/sqrt(14) in it
    std::vector<LabeledTriple> extra_contexts; // C25 = {alpha, beta, c}, C26 >= {alpha, a}, C27 >= {beta, b}
};

/// Theorem-level reduction: requires 0 < |<a|b>| < 3/sqrt(14) strictly
/// (within 1e-12 of either end throws OutOfRange; the equality case needs no
/// reduction).
ReductionResult reduce_to_equality(const Ray& a, const Ray& b);

/// The 24-context instance re-expressed relative to an orthonormal basis:
/// each built-in vector (i,j,k) maps to i*u1 + j*u2 + k*u3.  Context ids and
/// observable ids get the given prefix ("P:C7", "P:2,-3,0").
Hypergraph table1_in_basis(const std::array<NumRay, 3>& basis,
                           const std::string& prefix);

/// An instance witnessing that no admissible noncontextual assignment gives
/// both P_a and P_b the value 1, for any 0 < |<a|b>| <= 3/sqrt(14).  At the
/// upper boundary this is the built-in instance in a basis aligning its
/// distinguished pair with (a, b); strictly inside it is that instance in the
/// reduction basis plus the three linking contexts.
struct Theorem1Instance {
    Hypergraph h;
    std::string a_id;
    std::string b_id;
    std::string table_b_slot_id; // observable in the (3,2,1) role; == b_id at equality
    bool reduced;                // true when the linking contexts C25..C27 are present
};
Theorem1Instance theorem1_instance(const Ray& a, const Ray& b,
                                   const std::string& a_label = "a",
                                   const std::string& b_label = "b",
                                   const std::string& prefix = "");

/// The combined instance for the value-indefiniteness corollary: two copies
/// of the theorem instance (pairs (a,b) and (a,c) with c = q a - p e2) glued
/// through contexts C1 = {a, alpha, beta} and C2 = {b, c, beta}.  Requires
/// sqrt(5/14) <= |<a|b>| <= 3/sqrt(14) (OutOfRange otherwise).
struct Corollary1Instance {
    Hypergraph h;
    std::string a_id, b_id, c_id, alpha_id, beta_id;
    std::string c1_id, c2_id;
};
Corollary1Instance build_corollary1_instance(const Ray& a, const Ray& b,
                                             const std::string& a_label = "a",
                                             const std::string& b_label = "b");

enum class CertOutcome { ValueIndefinite, WindowViolated };

/// Verdict that P_phi cannot carry any definite value once the system is
/// prepared so that P_psi carries 1.  Both value branches are refuted by
/// propagation over the combined instance; the traces are the witness.
struct Certificate {
    NumRay psi;
    NumRay phi;
    double overlap;
    bool window_ok;
    CertOutcome outcome;
    std::optional<Corollary1Instance> instance; // present when window_ok
    PropagationTrace branch_phi_one;            // refutation of v(P_phi) = 1
    PropagationTrace branch_phi_zero;           // refutation of v(P_phi) = 0
};

/// Seeds v(P_psi) = 1 (the eigenstate convention) on the combined instance
/// and refutes both definite values for P_phi in noncontextual mode.  Outside
/// the overlap window the outcome is WindowViolated and no instance is built.
Certificate certify_value_indefinite(const Ray& psi, const Ray& phi);

} // namespace ksvi
