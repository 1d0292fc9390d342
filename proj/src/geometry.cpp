#include "ksvi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace ksvi {

double window_lower() { return std::sqrt(5.0 / 14.0); }
double window_upper() { return 3.0 / std::sqrt(14.0); }

ExactRay canonicalize_ray(const Vec3i& components) {
    if (components[0] == 0 && components[1] == 0 && components[2] == 0) {
        throw ZeroVector("cannot canonicalize the zero vector");
    }
    long long g = 0;
    for (long long x : components) {
        g = std::gcd(g, x < 0 ? -x : x);
    }
    Vec3i c = components;
    for (auto& x : c) {
        x /= g;
    }
    for (long long x : c) {
        if (x != 0) {
            if (x < 0) {
                for (auto& y : c) {
                    y = -y;
                }
            }
            break;
        }
    }
    return ExactRay{c};
}

long long dot_exact(const ExactRay& a, const ExactRay& b) {
    __int128 acc = 0;
    for (int i = 0; i < 3; ++i) {
        acc += static_cast<__int128>(a.c[static_cast<size_t>(i)]) *
               static_cast<__int128>(b.c[static_cast<size_t>(i)]);
    }
    if (acc > INT64_MAX || acc < INT64_MIN) {
        throw Error("exact dot product overflows 64 bits");
    }
    return static_cast<long long>(acc);
}

namespace {

double norm_of(const Vec3c& v) {
    double s = 0.0;
    for (const Complex& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

Vec3c scaled(const Vec3c& v, Complex s) {
    return {v[0] * s, v[1] * s, v[2] * s};
}

Complex herm(const Vec3c& a, const Vec3c& b) {
    Complex acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        acc += std::conj(a[static_cast<size_t>(i)]) * b[static_cast<size_t>(i)];
    }
    return acc;
}

bool is_real_vec(const Vec3c& v) {
    for (const Complex& z : v) {
        if (std::abs(z.imag()) > kOrthTol) {
            return false;
        }
    }
    return true;
}

} // namespace

NumRay NumRay::unit(const Vec3c& v) {
    double n = norm_of(v);
    if (n < 1e-12) {
        throw ZeroVector("cannot normalise a (near-)zero vector");
    }
    return NumRay(scaled(v, 1.0 / n));
}

NumRay NumRay::canonical(const Vec3c& v) {
    NumRay r = unit(v);
    for (const Complex& z : r.c_) {
        double m = std::abs(z);
        if (m > kOrthTol) {
            r.c_ = scaled(r.c_, std::conj(z) / m);
            break;
        }
    }
    return r;
}

NumRay Ray::numeric() const {
    if (is_exact()) {
        const Vec3i& e = exact().c;
        return NumRay::canonical({Complex(static_cast<double>(e[0])),
                                  Complex(static_cast<double>(e[1])),
                                  Complex(static_cast<double>(e[2]))});
    }
    return num();
}

Complex inner_product(const Ray& a, const Ray& b) {
    if (a.is_exact() && b.is_exact()) {
        return Complex(static_cast<double>(dot_exact(a.exact(), b.exact())));
    }
    return herm(a.numeric().components(), b.numeric().components());
}

double overlap_magnitude(const Ray& a, const Ray& b) {
    double m = std::abs(herm(a.numeric().components(), b.numeric().components()));
    return std::clamp(m, 0.0, 1.0);
}

Ray cross_product(const Ray& a, const Ray& b) {
    if (a.is_exact() && b.is_exact()) {
        const Vec3i& u = a.exact().c;
        const Vec3i& v = b.exact().c;
        auto comp = [&](int i, int j) {
            __int128 x = static_cast<__int128>(u[static_cast<size_t>(i)]) *
                             v[static_cast<size_t>(j)] -
                         static_cast<__int128>(u[static_cast<size_t>(j)]) *
                             v[static_cast<size_t>(i)];
            if (x > INT64_MAX || x < INT64_MIN) {
                throw Error("exact cross product overflows 64 bits");
            }
            return static_cast<long long>(x);
        };
        Vec3i w{comp(1, 2), comp(2, 0), comp(0, 1)};
        if (w[0] == 0 && w[1] == 0 && w[2] == 0) {
            throw DegenerateCross("cross product of parallel rays");
        }
        return Ray(canonicalize_ray(w));
    }
    Vec3c u = a.numeric().components();
    Vec3c v = b.numeric().components();
    if (!is_real_vec(u) || !is_real_vec(v)) {
        throw UnsupportedComplexCross("cross product requires real-valued rays");
    }
    Vec3c w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
    if (norm_of(w) < kOrthTol) {
        throw DegenerateCross("cross product of parallel rays");
    }
    return Ray(NumRay::canonical(w));
}

std::array<NumRay, 3> orthonormal_basis_from_pair(const Ray& a, const Ray& b) {
    Vec3c u = a.numeric().components();
    Vec3c w = b.numeric().components();
    Complex p0 = herm(u, w);
    double p = std::abs(p0);
    if (p <= kOrthTol || p >= 1.0 - kOrthTol) {
        throw DegeneratePair("basis construction needs 0 < |<a|b>| < 1");
    }
    // rotate b's phase so <a|b> becomes the real positive p
    w = scaled(w, std::conj(p0) / p);
    double q = std::sqrt(1.0 - p * p);
    Vec3c e2{(w[0] - u[0] * p) / q, (w[1] - u[1] * p) / q, (w[2] - u[2] * p) / q};
    // conj-cross: orthogonal to both under the Hermitian product, and equal to
    // the plain cross product when the inputs are real
    Vec3c cu{std::conj(u[0]), std::conj(u[1]), std::conj(u[2])};
    Vec3c ce{std::conj(e2[0]), std::conj(e2[1]), std::conj(e2[2])};
    Vec3c e3{cu[1] * ce[2] - cu[2] * ce[1], cu[2] * ce[0] - cu[0] * ce[2],
             cu[0] * ce[1] - cu[1] * ce[0]};
    return {NumRay::unit(u), NumRay::unit(e2), NumRay::unit(e3)};
}

WindowCheck in_certification_window(const Ray& a, const Ray& b) {
    double m = overlap_magnitude(a, b);
    bool inside =
        m >= window_lower() - kWindowSlack && m <= window_upper() + kWindowSlack;
    return {inside, m};
}

bool rays_equal(const Ray& a, const Ray& b) {
    if (a.is_exact() && b.is_exact()) {
        return a.exact() == b.exact();
    }
    return 1.0 - overlap_magnitude(a, b) < kOrthTol;
}

std::string ray_repr(const Ray& r) {
    if (r.is_exact()) {
        const Vec3i& c = r.exact().c;
        return std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
               std::to_string(c[2]);
    }
    const Vec3c& c = r.num().components();
    char buf[128];
    if (is_real_vec(c)) {
        std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g", c[0].real(), c[1].real(),
                      c[2].real());
    } else {
        std::snprintf(buf, sizeof buf, "%.6g%+.6gi,%.6g%+.6gi,%.6g%+.6gi",
                      c[0].real(), c[0].imag(), c[1].real(), c[1].imag(),
                      c[2].real(), c[2].imag());
    }
    return buf;
}

} // namespace ksvi
