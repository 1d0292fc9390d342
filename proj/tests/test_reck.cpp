#include <doctest.h>

#include <cmath>

#include "ksvi/qrng.hpp"
#include "ksvi/reck.hpp"
#include "test_support.hpp"

using namespace ksvi;
using ksvi::testing::random_unitary;

namespace {

const double kPi = std::acos(-1.0);

} // namespace

TEST_CASE("the x-gate reference matrix") {
    UnitaryMatrix ux = ux_reference();
    double r2 = std::sqrt(2.0);
    CHECK(std::abs(ux.at(0, 0) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(ux.at(0, 1) - Complex(r2 / 2.0)) < 1e-15);
    CHECK(std::abs(ux.at(0, 2) - Complex(0.5)) < 1e-15);
    CHECK(ux.unitarity_deviation() < 1e-15);

    // applying it to the middle-beam column: magnitudes (1/sqrt2, 0, 1/sqrt2)
    Complex c0 = ux.at(0, 1), c1 = ux.at(1, 1), c2 = ux.at(2, 1);
    CHECK(std::abs(c0) == doctest::Approx(1.0 / r2));
    CHECK(std::abs(c1) == doctest::Approx(0.0));
    CHECK(std::abs(c2) == doctest::Approx(1.0 / r2));
}

TEST_CASE("identity decomposes into idle stages") {
    Decomposition d = decompose(UnitaryMatrix::identity(3));
    CHECK(d.stages.size() == 3);
    for (const BeamSplitterStage& s : d.stages) {
        CHECK(s.transmittance == doctest::Approx(1.0));
        CHECK(s.phase == doctest::Approx(0.0));
    }
    for (double p : d.final_phases) {
        CHECK(p == doctest::Approx(0.0));
    }
    CHECK(reconstruct(d, 3).max_abs_difference(UnitaryMatrix::identity(3)) < 1e-12);
}

TEST_CASE("the x-gate factorization matches the published stage parameters") {
    Decomposition d = decompose(ux_reference());
    REQUIRE(d.stages.size() == 3);
    REQUIRE(d.final_phases.size() == 3);
    // beams (2,1), (3,1), (3,2) in that reconstruction order
    CHECK(d.stages[0].port_low == 1);
    CHECK(d.stages[0].port_high == 2);
    CHECK(d.stages[1].port_low == 1);
    CHECK(d.stages[1].port_high == 3);
    CHECK(d.stages[2].port_low == 2);
    CHECK(d.stages[2].port_high == 3);
    CHECK(std::fabs(d.stages[0].transmittance - 1.0 / 3.0) < 1e-9);
    CHECK(std::fabs(d.stages[1].transmittance - 3.0 / 4.0) < 1e-9);
    CHECK(std::fabs(d.stages[2].transmittance - 1.0 / 3.0) < 1e-9);
    CHECK(std::fabs(d.stages[0].phase - (-kPi / 2.0)) < 1e-9);
    CHECK(std::fabs(d.stages[1].phase - kPi) < 1e-9);
    CHECK(std::fabs(d.stages[2].phase - (-kPi / 2.0)) < 1e-9);
    CHECK(std::fabs(d.final_phases[0]) < 1e-9);
    CHECK(std::fabs(d.final_phases[1] - (-kPi / 2.0)) < 1e-9);
    CHECK(std::fabs(d.final_phases[2] - (-kPi / 2.0)) < 1e-9);

    CHECK(reconstruct(d, 3).max_abs_difference(ux_reference()) < 1e-12);

    // determinism: the same input factors identically, bit for bit
    Decomposition d2 = decompose(ux_reference());
    for (size_t i = 0; i < 3; ++i) {
        CHECK(d.stages[i].transmittance == d2.stages[i].transmittance);
        CHECK(d.stages[i].phase == d2.stages[i].phase);
        CHECK(d.final_phases[i] == d2.final_phases[i]);
    }
}

TEST_CASE("reconstruction corner cases") {
    Decomposition empty;
    empty.final_phases = {0.0, 0.0, 0.0};
    CHECK(reconstruct(empty, 3).max_abs_difference(UnitaryMatrix::identity(3)) == 0.0);

    // T = 0 swaps the two beams up to phases i and i e^{i phi}
    BeamSplitterStage swap{1, 2, 0.0, 0.7};
    UnitaryMatrix m = stage_unitary(swap, 2);
    CHECK(std::abs(m.at(0, 0)) < 1e-15);
    CHECK(std::abs(m.at(1, 1)) < 1e-15);
    CHECK(std::abs(m.at(0, 1) - Complex(0, 1) * std::polar(1.0, 0.7)) < 1e-15);
    CHECK(std::abs(m.at(1, 0) - Complex(0, 1)) < 1e-15);

    CHECK_THROWS_AS(stage_unitary(BeamSplitterStage{2, 2, 0.5, 0.0}, 3), BadPort);
    CHECK_THROWS_AS(stage_unitary(BeamSplitterStage{1, 4, 0.5, 0.0}, 3), BadPort);
    Decomposition bad;
    bad.final_phases = {0.0, 0.0};
    bad.stages.push_back(BeamSplitterStage{1, 3, 0.5, 0.0});
    CHECK_THROWS_AS(reconstruct(bad, 2), BadPort);
}

TEST_CASE("stage matrices follow the fixed convention and stay unitary") {
    SplitMix64 rng{17};
    for (int i = 0; i < 100; ++i) {
        BeamSplitterStage s{1, 2, rng.next_unit(), (rng.next_unit() - 0.5) * 2.0 * kPi};
        UnitaryMatrix m = stage_unitary(s, 2);
        CHECK(m.unitarity_deviation() < 1e-14);
        double t = std::sqrt(s.transmittance);
        double r = std::sqrt(1.0 - s.transmittance);
        Complex i1(0.0, 1.0);
        Complex eip = std::polar(1.0, s.phase);
        CHECK(std::abs(m.at(0, 0) - Complex(t)) < 1e-14);
        CHECK(std::abs(m.at(0, 1) - i1 * eip * r) < 1e-14);
        CHECK(std::abs(m.at(1, 0) - i1 * r) < 1e-14);
        CHECK(std::abs(m.at(1, 1) - eip * t) < 1e-14);
    }
}

TEST_CASE("non-unitary input is rejected with the measured deviation") {
    UnitaryMatrix m = UnitaryMatrix::identity(3);
    m.at(0, 0) = 1.5;
    CHECK_THROWS_AS(decompose(m), NotUnitary);
    try {
        decompose(m);
    } catch (const NotUnitary& e) {
        CHECK(e.max_deviation > 1.0);
    }
}

TEST_CASE("fifty random 4x4 unitaries survive the round trip") {
    SplitMix64 rng{314159};
    for (int rep = 0; rep < 50; ++rep) {
        UnitaryMatrix u = random_unitary(4, rng);
        Decomposition d = decompose(u);
        CHECK(reconstruct(d, 4).max_abs_difference(u) < 1e-10);
    }
}

TEST_CASE("round trip over random unitaries of every supported size") {
    SplitMix64 rng{2718};
    for (int n : {2, 3, 4, 5}) {
        for (int rep = 0; rep < 13; ++rep) {
            UnitaryMatrix u = random_unitary(n, rng);
            REQUIRE(u.unitarity_deviation() < 1e-12);
            Decomposition d = decompose(u);
            CHECK(static_cast<int>(d.stages.size()) <= n * (n - 1) / 2);
            CHECK(static_cast<int>(d.final_phases.size()) == n);
            for (const BeamSplitterStage& s : d.stages) {
                CHECK(s.transmittance >= 0.0);
                CHECK(s.transmittance <= 1.0);
                CHECK(s.phase <= kPi + 1e-12);
                CHECK(s.phase > -kPi - 1e-12);
            }
            CHECK(reconstruct(d, n).max_abs_difference(u) < 1e-10);
        }
    }
}
