#include "ksvi/reck.hpp"

#include <cmath>

namespace ksvi {

namespace {

constexpr double kUnitaryTol = 1e-10;
const double kPi = std::acos(-1.0);

double wrap_angle(double a) {
    // into (-pi, pi]
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) {
        a += 2.0 * kPi;
    } else if (a > kPi) {
        a -= 2.0 * kPi;
    }
    return a + 0.0; // clears -0.0
}

} // namespace

UnitaryMatrix UnitaryMatrix::identity(int n) {
    UnitaryMatrix u(n);
    for (int i = 0; i < n; ++i) {
        u.at(i, i) = 1.0;
    }
    return u;
}

UnitaryMatrix UnitaryMatrix::from_entries(int n, std::vector<Complex> row_major) {
    if (n <= 0 || row_major.size() != static_cast<size_t>(n) * static_cast<size_t>(n)) {
        throw Error("matrix entry count does not match dimension");
    }
    UnitaryMatrix u(n);
    u.a_ = std::move(row_major);
    return u;
}

double UnitaryMatrix::unitarity_deviation() const {
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < n_; ++k) {
                acc += at(i, k) * std::conj(at(j, k));
            }
            if (i == j) {
                acc -= 1.0;
            }
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

UnitaryMatrix UnitaryMatrix::multiplied_by(const UnitaryMatrix& rhs) const {
    if (rhs.n_ != n_) {
        throw Error("dimension mismatch in matrix product");
    }
    UnitaryMatrix out(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < n_; ++k) {
                acc += at(i, k) * rhs.at(k, j);
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

double UnitaryMatrix::max_abs_difference(const UnitaryMatrix& other) const {
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            worst = std::max(worst, std::abs(at(i, j) - other.at(i, j)));
        }
    }
    return worst;
}

UnitaryMatrix stage_unitary(const BeamSplitterStage& stage, int n) {
    if (stage.port_low < 1 || stage.port_high <= stage.port_low || stage.port_high > n) {
        throw BadPort("stage ports (" + std::to_string(stage.port_low) + "," +
                      std::to_string(stage.port_high) + ") out of range for n=" +
                      std::to_string(n));
    }
    double t = std::sqrt(stage.transmittance);
    double r = std::sqrt(std::max(0.0, 1.0 - stage.transmittance));
    Complex eip = std::polar(1.0, stage.phase);
    Complex i1(0.0, 1.0);
    UnitaryMatrix u = UnitaryMatrix::identity(n);
    int a = stage.port_low - 1, b = stage.port_high - 1;
    u.at(a, a) = t;
    u.at(a, b) = i1 * eip * r;
    u.at(b, a) = i1 * r;
    u.at(b, b) = eip * t;
    return u;
}

Decomposition decompose(const UnitaryMatrix& u) {
    double dev = u.unitarity_deviation();
    if (dev > kUnitaryTol) {
        throw NotUnitary("input deviates from unitarity by " + std::to_string(dev), dev);
    }
    int n = u.n();
    UnitaryMatrix w = u;
    std::vector<BeamSplitterStage> elimination_order;

    // Zero w(r, c) by right-multiplying with the adjoint of a stage on
    // columns (c, r).  With diag entry d = w(r, r):
    //   T = |d|^2 / (|w(r,c)|^2 + |d|^2),  phase = arg(i d / w(r,c)).
    for (int r = n - 1; r >= 1; --r) {
        for (int c = r - 1; c >= 0; --c) {
            Complex off = w.at(r, c);
            Complex diag = w.at(r, r);
            BeamSplitterStage stage{c + 1, r + 1, 1.0, 0.0};
            if (std::abs(off) > 1e-13) {
                double t2 = std::norm(diag) / (std::norm(off) + std::norm(diag));
                stage.transmittance = t2;
                if (std::abs(diag) > 1e-13) {
                    stage.phase =
                        wrap_angle(kPi / 2.0 + std::arg(diag) - std::arg(off));
                    if (std::fabs(stage.phase) < 1e-12) {
                        stage.phase = 0.0;
                    }
                } else {
                    stage.phase = 0.0; // pure swap block, phase unconstrained
                }
            }
            // apply w <- w * stage^dagger, touching only columns c and r
            double t = std::sqrt(stage.transmittance);
            double rr = std::sqrt(std::max(0.0, 1.0 - stage.transmittance));
            Complex emip = std::polar(1.0, -stage.phase);
            Complex mi(0.0, -1.0);
            for (int i = 0; i < n; ++i) {
                Complex wc = w.at(i, c), wr = w.at(i, r);
                w.at(i, c) = wc * t + wr * (mi * emip * rr);
                w.at(i, r) = wc * (mi * rr) + wr * (emip * t);
            }
            w.at(r, c) = 0.0; // exact by construction
            elimination_order.push_back(stage);
        }
    }

    Decomposition d;
    d.stages.assign(elimination_order.rbegin(), elimination_order.rend());
    d.final_phases.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Complex diag = w.at(i, i);
        double phase = std::abs(diag) > 1e-13 ? wrap_angle(std::arg(diag)) : 0.0;
        if (std::fabs(phase) < 1e-12) {
            phase = 0.0;
        }
        d.final_phases[static_cast<size_t>(i)] = phase;
    }
    return d;
}

UnitaryMatrix reconstruct(const Decomposition& d, int n) {
    if (static_cast<int>(d.final_phases.size()) != n) {
        throw Error("final phase count does not match dimension");
    }
    UnitaryMatrix acc = UnitaryMatrix::identity(n);
    for (int i = 0; i < n; ++i) {
        acc.at(i, i) = std::polar(1.0, d.final_phases[static_cast<size_t>(i)]);
    }
    for (const BeamSplitterStage& s : d.stages) {
        acc = acc.multiplied_by(stage_unitary(s, n));
    }
    return acc;
}

UnitaryMatrix ux_reference() {
    double r2 = std::sqrt(2.0);
    return UnitaryMatrix::from_entries(
        3, {Complex(0.5), Complex(r2 / 2.0), Complex(0.5),
            Complex(r2 / 2.0), Complex(0.0), Complex(-r2 / 2.0),
            Complex(0.5), Complex(-r2 / 2.0), Complex(0.5)});
}

} // namespace ksvi
