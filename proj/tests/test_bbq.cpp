#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cavitychain/bbq.hpp"
#include "cavitychain/calibrate.hpp"
#include "cavitychain/circuit.hpp"
#include "cavitychain/network_modes.hpp"
#include "cavitychain/resonance.hpp"
#include "cavitychain/spectra.hpp"

using namespace cavitychain;

TEST_CASE("csigma_ec_ej reproduces the reported qubit energies") {
    const QubitEnergies en = csigma_ec_ej(6.368e9, 8e-9);
    CHECK(en.c_sigma_f == Catch::Approx(78e-15).margin(0.5e-15));
    CHECK(en.e_c_hz == Catch::Approx(0.248e9).margin(0.5e6));
    CHECK(en.e_j_hz == Catch::Approx(20.433e9).margin(0.5e6));

    SECTION("scaling in the junction inductance") {
        const QubitEnergies doubled = csigma_ec_ej(6.368e9 / std::sqrt(2.0), 16e-9);
        CHECK(doubled.e_j_hz == Catch::Approx(0.5 * en.e_j_hz).epsilon(1e-12));
        CHECK(doubled.c_sigma_f == Catch::Approx(en.c_sigma_f).epsilon(1e-12));
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(csigma_ec_ej(0.0, 8e-9), Error);
        CHECK_THROWS_AS(csigma_ec_ej(6e9, 0.0), Error);
    }
}

TEST_CASE("mode capacitance of an isolated tank is its capacitor") {
    const double l = 2e-9, c = 400e-15;
    const double f0 = 1.0 / (2.0 * k_pi * std::sqrt(l * c));
    ChainSpec spec;
    spec.cavities = 1;
    spec.tank_l = l;
    spec.tank_c = c;
    const BuiltCircuit built = build_cavity_circuit(spec);
    CircuitNetwork net = built.net;
    net.ports.push_back({"p", PortRole::QubitLumped, built.tank_nodes[0]});
    SweepGrid grid{f0 - 100e6, f0 + 100e6, 1e6};
    const SpectrumTrace y = port_admittance_spectrum(net, "p", grid);
    const ResonanceSet zeros = find_imY_zeros(y);
    REQUIRE(zeros.frequencies_hz.size() == 1);
    const double c_p = bbq_mode_capacitance(y, zeros.frequencies_hz[0]);
    CHECK(c_p == Catch::Approx(c).epsilon(1e-9));

    SECTION("halving the differencing step barely moves the value") {
        const double c_half = bbq_mode_capacitance(y, zeros.frequencies_hz[0], 0.5);
        CHECK(std::abs(c_half - c_p) / c_p < 1e-6);
    }
    SECTION("frequencies outside the trace are rejected") {
        CHECK_THROWS_AS(bbq_mode_capacitance(y, grid.stop_hz + 1e9, 1.0), GridError);
    }
}

TEST_CASE("Kerr chain on reported values") {
    SECTION("cross-Kerr and couplings under both conventions") {
        const KerrReport f2 =
            bbq_kerr_from_values(-227e6, -0.134e6, 739e6, 248e6, KerrConvention::FactorTwo);
        CHECK(f2.chi_qr_hz == Catch::Approx(-11.03e6).epsilon(0.005));
        CHECK(f2.g_hz == Catch::Approx(110e6).epsilon(0.01));

        const KerrReport b4 =
            bbq_kerr_from_values(-227e6, -0.134e6, 739e6, 248e6, KerrConvention::LiteralB4);
        CHECK(b4.g_hz == Catch::Approx(155.86e6).epsilon(0.01));
        CHECK(b4.g_hz == Catch::Approx(f2.g_hz * std::sqrt(2.0)).epsilon(1e-12));
    }
    SECTION("inconsistent self-Kerr signs are rejected") {
        CHECK_THROWS_AS(bbq_kerr_from_values(-227e6, 0.134e6, 739e6, 248e6),
                        InconsistentSpectrumError);
    }
}

TEST_CASE("Kerr chain on the calibrated circuit") {
    CalibrationTargets t;
    t.omega_hz = 5.642e9;
    t.g_hz = 110e6;
    t.q_hz = 6.368e9;
    const CalibratedChain cal = calibrate_chain(t);
    const BuiltCircuit built =
        build_cavity_circuit(cal.chain(1, {cal.qubit(0, cal.qubit_l_j, "lp")}));
    const auto modes = network_eigenfrequencies(built.net);
    SweepGrid grid{modes.front() - 300e6, modes.back() + 300e6, 1e6};
    const SpectrumTrace y = port_admittance_spectrum(built.net, "lp", grid);
    const ResonanceSet zeros = find_imY_zeros(y);
    REQUIRE(zeros.frequencies_hz.size() == 2);
    const double f_r = zeros.frequencies_hz[0];
    const double f_q = zeros.frequencies_hz[1];
    const KerrReport kerr = bbq_kerr(y, f_q, f_r, cal.qubit_l_j);

    SECTION("qubit-mode capacitance sits at the reported self-Kerr scale") {
        CHECK(k_elementary_charge * k_elementary_charge / (2.0 * kerr.c_q_f * k_planck) ==
              Catch::Approx(227e6).epsilon(0.10));
        CHECK(kerr.chi_q_hz == Catch::Approx(-227e6).epsilon(0.10));
        CHECK(kerr.chi_q_hz < 0.0);
        CHECK(kerr.chi_r_hz < 0.0);
    }
    SECTION("factor-2 coupling matches the calibration target") {
        CHECK(kerr.g_hz == Catch::Approx(110e6).epsilon(0.05));
        CHECK(kerr.convention == KerrConvention::FactorTwo);
    }
    SECTION("identical mode frequencies are rejected") {
        CHECK_THROWS_AS(bbq_kerr(y, f_q, f_q, cal.qubit_l_j), Error);
    }
}
