#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cavitychain/calibrate.hpp"
#include "cavitychain/circuit.hpp"
#include "cavitychain/closed_form.hpp"
#include "cavitychain/constants.hpp"
#include "cavitychain/network_modes.hpp"
#include "cavitychain/two_level_fit.hpp"

using namespace cavitychain;

namespace {

AvoidedCrossing synthetic_crossing(double omega, double g, double c_sigma, double noise_hz,
                                   unsigned seed) {
    AvoidedCrossing ac;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-noise_hz, noise_hz);
    for (double lj = 6e-9; lj <= 14e-9 + 1e-12; lj += 0.05e-9) {
        const double q = 1.0 / (2.0 * k_pi * std::sqrt(c_sigma * lj));
        const TwoLevelModes m = two_level_modes(omega, q, g);
        ac.sweep_values.push_back(lj);
        ac.branch_low.push_back(m.lower_hz + (noise_hz > 0.0 ? jitter(rng) : 0.0));
        ac.branch_high.push_back(m.upper_hz + (noise_hz > 0.0 ? jitter(rng) : 0.0));
    }
    return ac;
}

}  // namespace

TEST_CASE("noiseless synthetic data is recovered to machine precision") {
    const double omega = 5.642e9, g = 110e6, cs = 78e-15;
    const TwoLevelFitResult fit = fit_two_level(synthetic_crossing(omega, g, cs, 0.0, 1));
    CHECK(fit.g_hz == Catch::Approx(g).epsilon(1e-9));
    CHECK(fit.omega_hz == Catch::Approx(omega).epsilon(1e-12));
    CHECK(fit.c_sigma_f == Catch::Approx(cs).epsilon(1e-9));
    CHECK(fit.rms_hz < 1.0);
}

TEST_CASE("uniform noise at 0.1 MHz leaves g within 1%") {
    const double omega = 5.642e9, g = 110e6, cs = 78e-15;
    for (unsigned seed : {2u, 3u, 4u}) {
        const TwoLevelFitResult fit =
            fit_two_level(synthetic_crossing(omega, g, cs, 0.1e6, seed));
        CHECK(std::abs(fit.g_hz - g) <= 0.01 * g);
    }
}

TEST_CASE("fixed parameters reduce the fit") {
    const double omega = 5.642e9, g = 110e6, cs = 78e-15;
    TwoLevelFitOptions opt;
    opt.fixed_omega_hz = omega;
    opt.fixed_c_sigma_f = cs;
    const TwoLevelFitResult fit = fit_two_level(synthetic_crossing(omega, g, cs, 0.0, 5), opt);
    CHECK(fit.g_hz == Catch::Approx(g).epsilon(1e-9));
    CHECK(fit.omega_hz == omega);
    CHECK(fit.c_sigma_f == cs);
}

TEST_CASE("oracle branch data yields the calibrated coupling") {
    CalibrationTargets t;
    t.omega_hz = 5.642e9;
    t.g_hz = 110e6;
    t.q_hz = 6.368e9;
    const CalibratedChain cal = calibrate_chain(t);
    AvoidedCrossing ac;
    for (double lj = 6e-9; lj <= 14e-9 + 1e-12; lj += 0.05e-9) {
        const auto f = network_eigenfrequencies(
            build_cavity_circuit(cal.chain(1, {cal.qubit(0, lj)})).net);
        REQUIRE(f.size() == 2);
        ac.sweep_values.push_back(lj);
        ac.branch_low.push_back(f[0]);
        ac.branch_high.push_back(f[1]);
    }
    const TwoLevelFitResult fit = fit_two_level(ac);
    CHECK(std::abs(fit.g_hz - 110e6) <= 0.05 * 110e6);
    // the two-level model is only an approximation of the circuit
    CHECK(fit.rms_hz < 1e6);
    CHECK(fit.rms_hz > 0.0);
}

TEST_CASE("too little data is rejected") {
    AvoidedCrossing ac;
    ac.sweep_values = {6e-9, 7e-9};
    ac.branch_low = {5.5e9, 5.6e9};
    ac.branch_high = {5.8e9, 5.9e9};
    CHECK_THROWS_AS(fit_two_level(ac), InsufficientDataError);
}
