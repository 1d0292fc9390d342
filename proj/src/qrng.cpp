#include "ksvi/qrng.hpp"

#include <cmath>

namespace ksvi {

SpinOperator spin_operator(double theta, double phi) {
    double c = std::cos(theta);
    double s = std::sin(theta) / std::sqrt(2.0);
    Complex ep = std::polar(1.0, phi);  // e^{+i phi}
    Complex em = std::polar(1.0, -phi); // e^{-i phi}
    SpinOperator op{theta, phi, {}};
    op.matrix = {{{Complex(c), em * s, Complex(0.0)},
                  {ep * s, Complex(0.0), em * s},
                  {Complex(0.0), ep * s, Complex(-c)}}};
    return op;
}

std::array<EigenPair, 3> eigenbasis(const SpinOperator& op) {
    double t = op.theta;
    double ch = std::cos(t / 2.0);
    double sh = std::sin(t / 2.0);
    double s = std::sin(t) / std::sqrt(2.0);
    Complex e1 = std::polar(1.0, op.phi);
    Complex e2 = std::polar(1.0, 2.0 * op.phi);
    NumRay plus = NumRay::canonical({Complex(ch * ch), e1 * s, e2 * (sh * sh)});
    NumRay zero = NumRay::canonical({Complex(s), e1 * (-std::cos(t)), e2 * (-s)});
    NumRay minus = NumRay::canonical({Complex(sh * sh), e1 * (-s), e2 * (ch * ch)});
    return {EigenPair{1, plus}, EigenPair{0, zero}, EigenPair{-1, minus}};
}

OutcomeProbabilities outcome_probabilities(double theta, double /*phi*/) {
    double s2 = std::sin(theta) * std::sin(theta);
    double c = std::cos(theta);
    return {s2 / 2.0, c * c, s2 / 2.0};
}

bool certification_window(double theta) {
    const double pi = std::acos(-1.0);
    return theta >= pi / 3.0 - kWindowSlack && theta <= 2.0 * pi / 3.0 + kWindowSlack;
}

BitStream simulate_bits(double theta, double phi, long long n, uint64_t seed) {
    if (n < 0) {
        throw Error("bit count must be nonnegative");
    }
    OutcomeProbabilities p = outcome_probabilities(theta, phi);
    double cum_plus = p.plus;
    double cum_zero = p.plus + p.zero;

    BitStream out;
    out.theta = theta;
    out.phi = phi;
    out.seed = seed;
    out.requested = n;
    out.bits.reserve(static_cast<size_t>(n));

    SplitMix64 rng{seed};
    while (static_cast<long long>(out.bits.size()) < n) {
        double u = rng.next_unit();
        if (u < cum_plus) {
            ++out.count_plus;
            out.bits.push_back(1);
        } else if (u < cum_zero) {
            ++out.count_zero; // monitor channel
        } else {
            ++out.count_minus;
            out.bits.push_back(0);
        }
    }
    return out;
}

std::vector<uint8_t> von_neumann_debias(const std::vector<uint8_t>& bits) {
    std::vector<uint8_t> out;
    out.reserve(bits.size() / 2);
    for (size_t i = 0; i + 1 < bits.size(); i += 2) {
        uint8_t a = bits[i], b = bits[i + 1];
        if (a != b) {
            out.push_back(a == 0 ? 0 : 1); // 01 -> 0, 10 -> 1
        }
    }
    return out;
}

NormalityReport borel_normality_test(const std::vector<uint8_t>& bits, int kmax) {
    if (kmax < 1) {
        throw Error("kmax must be at least 1");
    }
    long long need = (1ll << kmax) * kmax;
    if (static_cast<long long>(bits.size()) < need) {
        throw InsufficientData("need at least " + std::to_string(need) +
                               " bits for kmax=" + std::to_string(kmax) + ", got " +
                               std::to_string(bits.size()));
    }
    NormalityReport report;
    report.kmax = kmax;
    report.pass = true;
    for (int k = 1; k <= kmax; ++k) {
        NormalityLevel level;
        level.k = k;
        long long nblocks = static_cast<long long>(bits.size()) / k;
        level.n_blocks = nblocks;
        level.threshold =
            std::sqrt(std::log2(static_cast<double>(nblocks)) / static_cast<double>(nblocks));
        std::vector<long long> counts(static_cast<size_t>(1) << k, 0);
        for (long long b = 0; b < nblocks; ++b) {
            size_t word = 0;
            for (int j = 0; j < k; ++j) {
                word = (word << 1) | bits[static_cast<size_t>(b * k + j)];
            }
            ++counts[word];
        }
        level.pass = true;
        double ideal = 1.0 / static_cast<double>(1ll << k);
        for (size_t w = 0; w < counts.size(); ++w) {
            BlockStat stat;
            stat.block.resize(static_cast<size_t>(k));
            for (int j = 0; j < k; ++j) {
                stat.block[static_cast<size_t>(j)] =
                    (w >> (k - 1 - j)) & 1 ? '1' : '0';
            }
            stat.count = counts[w];
            stat.frequency =
                static_cast<double>(counts[w]) / static_cast<double>(nblocks);
            stat.deviation = std::fabs(stat.frequency - ideal);
            stat.pass = stat.deviation <= level.threshold;
            level.pass = level.pass && stat.pass;
            level.blocks.push_back(std::move(stat));
        }
        report.pass = report.pass && level.pass;
        report.levels.push_back(std::move(level));
    }
    return report;
}

} // namespace ksvi
