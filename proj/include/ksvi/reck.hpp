#pragma once

#include <vector>

#include "ksvi/geometry.hpp"

namespace ksvi {

class UnitaryMatrix {
public:
    static UnitaryMatrix identity(int n);
    static UnitaryMatrix from_entries(int n, std::vector<Complex> row_major);

    int n() const { return n_; }
    Complex at(int i, int j) const { return a_[index(i, j)]; }
    Complex& at(int i, int j) { return a_[index(i, j)]; }

    /// max |(U U*)_ij - delta_ij|
    double unitarity_deviation() const;

    UnitaryMatrix multiplied_by(const UnitaryMatrix& rhs) const;

    double max_abs_difference(const UnitaryMatrix& other) const;

private:
    explicit UnitaryMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * static_cast<size_t>(n)) {}
    size_t index(int i, int j) const {
        return static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j);
    }
    int n_;
    std::vector<Complex> a_;
};

/// One beam splitter with an external phase shifter on its second input
/// port: the 2x2 block on (1-based) beams (port_low, port_high) is
///   [ sqrt(T)   i e^{i phase} sqrt(R) ]
///   [ i sqrt(R)   e^{i phase} sqrt(T) ]     with R = 1 - T.
struct BeamSplitterStage {
    int port_low;  // i < j, 1-based beam indices
    int port_high;
    double transmittance; // T in [0, 1]
    double phase;         // radians in (-pi, pi]
};

/// Stage list plus final per-beam output phases; reconstruct() multiplies
/// diag(e^{i final_phases}) by the embedded stages in list order.
struct Decomposition {
    std::vector<BeamSplitterStage> stages;
    std::vector<double> final_phases;
};

/// Embed a stage into the n x n identity.  Throws BadPort when the ports do
/// not satisfy 1 <= low < high <= n.
UnitaryMatrix stage_unitary(const BeamSplitterStage& stage, int n);

/// Triangular elimination: right-multiplying by stage adjoints zeroes the
/// sub-diagonal entries row by row from the bottom, (n,n-1) .. (n,1),
/// (n-1,n-2) .. (2,1); the leftover diagonal becomes the final phases.  The
/// stage list comes out in reconstruction order (2,1), (3,1), (3,2), ...
/// Where an entry is already zero the stage is the underdetermined identity
/// (T = 1, phase = 0).  Throws NotUnitary when the input deviates from
/// unitarity by more than 1e-10.
Decomposition decompose(const UnitaryMatrix& u);

UnitaryMatrix reconstruct(const Decomposition& d, int n);

/// The exact matrix (1/2) [[1, r2, 1], [r2, 0, -r2], [1, -r2, 1]] with
/// r2 = sqrt(2): rows are the x-axis spin eigenvectors stacked (+1, 0, -1).
UnitaryMatrix ux_reference();

} // namespace ksvi
