#pragma once

#include <array>
#include <complex>
#include <string>
#include <variant>

#include "ksvi/errors.hpp"

namespace ksvi {

using Complex = std::complex<double>;
using Vec3c = std::array<Complex, 3>;
using Vec3i = std::array<long long, 3>;

// Numeric tolerances used throughout.  Orthogonality and unit-norm checks run
// at 1e-9; the certification-window boundaries get a much tighter 1e-12 slack
// so the window predicate is never loosened materially.
inline constexpr double kOrthTol = 1e-9;
inline constexpr double kWindowSlack = 1e-12;

// Overlap window [sqrt(5/14), 3/sqrt(14)] inside which value indefiniteness
// is certifiable.
double window_lower();
double window_upper();

/// A projective line through an integer vector in R^3.  Canonical form: the
/// gcd of the absolute components is 1 and the first nonzero component is
/// positive, so projectively equal integer triples compare equal bitwise.
struct ExactRay {
    Vec3i c{0, 0, 0};

    friend bool operator==(const ExactRay&, const ExactRay&) = default;
};

/// A unit vector in C^3 standing for the ray through it.  Factories:
///  - canonical(): normalises and fixes the global phase so the first
///    component of magnitude > 1e-9 is real positive (makes equality of
///    independently constructed rays testable);
///  - unit(): normalises only.  Used where a vector's phase carries meaning
///    relative to other vectors, e.g. members of a constructed orthonormal
///    basis whose coordinates must be preserved exactly.
/// Projective comparisons (rays_equal, overlaps) are phase-free either way.
class NumRay {
public:
    static NumRay canonical(const Vec3c& v);
    static NumRay unit(const Vec3c& v);

    const Vec3c& components() const { return c_; }
    Complex operator[](int i) const { return c_[static_cast<size_t>(i)]; }

private:
    explicit NumRay(const Vec3c& v) : c_(v) {}
    Vec3c c_;
};

/// Rank-1 projection observable P_psi, stored as the ray through psi.  The
/// exact variant keeps integer arithmetic decidable; the numeric variant
/// covers irrational constructions.
struct Ray {
    std::variant<ExactRay, NumRay> v;

    Ray(ExactRay r) : v(r) {}
    Ray(NumRay r) : v(r) {}

    bool is_exact() const { return std::holds_alternative<ExactRay>(v); }
    const ExactRay& exact() const { return std::get<ExactRay>(v); }
    const NumRay& num() const { return std::get<NumRay>(v); }

    /// Lossless conversion: an exact ray maps to the canonical numeric ray
    /// through the same line.
    NumRay numeric() const;
};

/// Reduce an integer triple to canonical form.  Throws ZeroVector on (0,0,0).
ExactRay canonicalize_ray(const Vec3i& components);

/// Exact integer dot product (no normalisation, no rounding).
long long dot_exact(const ExactRay& a, const ExactRay& b);

/// Hermitian inner product <a|b>.  Exact x Exact yields the exact integer dot
/// product; any numeric operand yields the inner product of unit-normalised
/// representatives.
Complex inner_product(const Ray& a, const Ray& b);

/// |<a|b>| of unit-normalised representatives, clamped into [0, 1].
double overlap_magnitude(const Ray& a, const Ray& b);

/// Cross product of two real-valued rays; the result is orthogonal to both.
/// Exact x Exact stays exact.  Throws UnsupportedComplexCross when either
/// operand has an imaginary part above 1e-9 and DegenerateCross when the
/// operands are parallel.
Ray cross_product(const Ray& a, const Ray& b);

/// Given rays with 0 < |<a|b>| < 1, returns (e1, e2, e3) with e1 = a,
/// e2 = (b' - a p)/q for b' phase-rotated so p = <a|b'> is real positive,
/// q = sqrt(1 - p^2), and e3 completing the right-handed orthonormal basis.
/// Expressing b' in this basis yields (p, q, 0).  Throws DegeneratePair when
/// the inputs are parallel or orthogonal.
std::array<NumRay, 3> orthonormal_basis_from_pair(const Ray& a, const Ray& b);

struct WindowCheck {
    bool inside;
    double overlap;
};

/// True iff sqrt(5/14) - 1e-12 <= |<a|b>| <= 3/sqrt(14) + 1e-12.
WindowCheck in_certification_window(const Ray& a, const Ray& b);

/// Projective (phase-free) ray equality: exact pairs compare canonically,
/// any numeric operand compares by 1 - |<a|b>| < 1e-9.
bool rays_equal(const Ray& a, const Ray& b);

/// Compact display form: "3,2,-13" for exact rays, rounded components for
/// numeric ones.  Used for default observable ids and diagnostics.
std::string ray_repr(const Ray& r);

} // namespace ksvi
