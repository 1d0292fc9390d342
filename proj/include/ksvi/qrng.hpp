#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ksvi/geometry.hpp"

namespace ksvi {

/// splitmix64: tiny seeded mixing generator with publicly specified
/// constants, so byte-exact regressions survive reimplementation.
struct SplitMix64 {
    uint64_t state = 0;

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// uniform in [0, 1)
    double next_unit() { return static_cast<double>(next()) * 0x1.0p-64; }
};

using Mat3 = std::array<std::array<Complex, 3>, 3>;

/// Spin-1 observable along polar angle theta, azimuth phi; eigenvalues
/// {+1, 0, -1}.
struct SpinOperator {
    double theta;
    double phi;
    Mat3 matrix;
};

/// Matrix with diagonal (cos t, 0, -cos t) and off-diagonals
/// e^{-+ i phi} sin t / sqrt(2).
SpinOperator spin_operator(double theta, double phi);

struct EigenPair {
    int eigenvalue; // +1, 0, -1
    NumRay vector;
};

/// Closed-form eigenvectors, phase-canonicalised, ordered (+1, 0, -1);
/// op.matrix * v = lambda * v within 1e-9.
std::array<EigenPair, 3> eigenbasis(const SpinOperator& op);

struct OutcomeProbabilities {
    double plus;  // sin^2(t)/2
    double zero;  // cos^2(t)
    double minus; // sin^2(t)/2
};

/// Measurement statistics for the preparation in the 0-eigenstate of the
/// z-axis operator; independent of phi.
OutcomeProbabilities outcome_probabilities(double theta, double phi);

/// True iff pi/3 - 1e-12 <= theta <= 2pi/3 + 1e-12, the angle range on which
/// sin(theta)/sqrt(2) stays inside the certification overlap window.
bool certification_window(double theta);

struct BitStream {
    std::vector<uint8_t> bits; // emitted bits: outcome +1 -> 1, -1 -> 0
    long long count_plus = 0;
    long long count_zero = 0; // monitor channel; never emitted
    long long count_minus = 0;
    double theta = 0;
    double phi = 0;
    uint64_t seed = 0;
    long long requested = 0;

    long long draws() const { return count_plus + count_zero + count_minus; }
};

/// Draw i.i.d. outcomes by cumulative-probability thresholding (+1, then 0,
/// then -1) on splitmix64 until n bits are emitted.  Outcome 0 only bumps the
/// monitor count.  Fully deterministic in (theta, phi, n, seed).
BitStream simulate_bits(double theta, double phi, long long n, uint64_t seed);

/// Pairwise extraction over disjoint pairs: 01 -> 0, 10 -> 1, 00/11 -> drop.
std::vector<uint8_t> von_neumann_debias(const std::vector<uint8_t>& bits);

struct BlockStat {
    std::string block;
    long long count = 0;
    double frequency = 0;
    double deviation = 0; // |frequency - 2^-k|
    bool pass = false;
};

struct NormalityLevel {
    int k = 0;
    long long n_blocks = 0;  // non-overlapping blocks of length k
    double threshold = 0;    // sqrt(log2(N) / N)
    std::vector<BlockStat> blocks;
    bool pass = false;
};

struct NormalityReport {
    int kmax = 0;
    std::vector<NormalityLevel> levels;
    bool pass = false;
};

/// Non-overlapping block frequencies for every k <= kmax, each compared
/// against sqrt(log2(N)/N) where N is the number of k-blocks.  Requires
/// len(bits) >= 2^kmax * kmax (InsufficientData otherwise).
NormalityReport borel_normality_test(const std::vector<uint8_t>& bits, int kmax = 4);

} // namespace ksvi
