#include <catch2/catch_amalgamated.hpp>

#include "cavitychain/j12.hpp"

using namespace cavitychain;

namespace {
constexpr double k_omega = 5.642e9;
constexpr double k_gamma = 25e6;
constexpr double k_g = 110e6;
}  // namespace

TEST_CASE("j12_asymptotic formulas") {
    SECTION("printed normalization by direct substitution") {
        CHECK(j12_asymptotic(QubitPlacement::NN, 100e6, 20e6, 1e9) ==
              Catch::Approx(0.4e6).epsilon(1e-12));
        CHECK(j12_asymptotic(QubitPlacement::NNN, 100e6, 20e6, 1e9) ==
              Catch::Approx(0.008e6).epsilon(1e-12));
    }
    SECTION("half-gap normalization is half the printed one") {
        for (auto p : {QubitPlacement::NN, QubitPlacement::NNN}) {
            CHECK(j12_asymptotic(p, 100e6, 20e6, 1e9, AsymptoticConvention::HalfGap) ==
                  Catch::Approx(0.5 * j12_asymptotic(p, 100e6, 20e6, 1e9)));
        }
    }
    SECTION("zero detuning is rejected") {
        CHECK_THROWS_AS(j12_asymptotic(QubitPlacement::NN, 1e8, 2e7, 0.0), Error);
    }
}

TEST_CASE("j12_sweep basics") {
    SECTION("decoupled qubits cross with zero gap") {
        const J12Point p = j12_sweep(QubitPlacement::NN, k_omega, k_gamma, 0.0,
                                     k_omega + 300e6);
        CHECK(p.j12_hz <= 1e3);
    }
    SECTION("working-point maxima near the reported values") {
        const J12Point nn = j12_sweep(QubitPlacement::NN, k_omega, k_gamma, k_g,
                                      k_omega + 10e6);
        CHECK(nn.j12_hz == Catch::Approx(12.4e6).epsilon(0.10));
        const J12Point nnn = j12_sweep(QubitPlacement::NNN, k_omega, k_gamma, k_g,
                                       k_omega + 10e6);
        CHECK(nnn.j12_hz == Catch::Approx(2.7e6).epsilon(0.10));
    }
    SECTION("detuning-reflection symmetry") {
        for (auto p : {QubitPlacement::NN, QubitPlacement::NNN}) {
            const J12Point plus = j12_sweep(p, k_omega, k_gamma, k_g, k_omega + 200e6);
            const J12Point minus = j12_sweep(p, k_omega, k_gamma, k_g, k_omega - 200e6);
            CHECK(plus.j12_hz == Catch::Approx(minus.j12_hz).epsilon(1e-6));
        }
    }
    SECTION("hybridized chain is rejected") {
        // strong coupling at zero detuning spreads the qubit character too
        // thin for a two-branch reading at either sweep endpoint
        CHECK_THROWS_AS(j12_sweep(QubitPlacement::NN, k_omega, 40e6, 200e6, k_omega),
                        BranchError);
    }
}

TEST_CASE("j12_sweep approaches the half-gap asymptotics") {
    const double delta = 10.0 * std::max(k_g, k_gamma);
    for (auto p : {QubitPlacement::NN, QubitPlacement::NNN}) {
        const J12Point sweep = j12_sweep(p, k_omega, k_gamma, k_g, k_omega + delta);
        const double asym =
            j12_asymptotic(p, k_g, k_gamma, delta, AsymptoticConvention::HalfGap);
        CHECK(std::abs(sweep.j12_hz - asym) / asym <= 0.10);
        // and the gap shrinks further out
        const J12Point farther = j12_sweep(p, k_omega, k_gamma, k_g, k_omega + 2.0 * delta);
        const double asym_far =
            j12_asymptotic(p, k_g, k_gamma, 2.0 * delta, AsymptoticConvention::HalfGap);
        CHECK(std::abs(farther.j12_hz - asym_far) / asym_far <
              std::abs(sweep.j12_hz - asym) / asym + 1e-6);
    }
}

TEST_CASE("nearest-neighbour coupling dominates beyond five g") {
    for (double delta = 5.0 * k_g; delta <= 12.0 * k_g; delta += 2.0 * k_g) {
        const J12Point nn = j12_sweep(QubitPlacement::NN, k_omega, k_gamma, k_g,
                                      k_omega + delta);
        const J12Point nnn = j12_sweep(QubitPlacement::NNN, k_omega, k_gamma, k_g,
                                       k_omega + delta);
        CHECK(nn.j12_hz >= nnn.j12_hz);
    }
}
