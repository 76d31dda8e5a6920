#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cavitychain/errors.hpp"

namespace cavitychain {

struct TwoLevelModes {
    double lower_hz;
    double upper_hz;
};

// Eigenfrequencies of the 2x2 qubit-cavity matrix [[omega, g], [g, q]].
inline TwoLevelModes two_level_modes(double omega_hz, double q_hz, double g_hz) {
    const double mean = 0.5 * (omega_hz + q_hz);
    const double split = 0.5 * std::sqrt((omega_hz - q_hz) * (omega_hz - q_hz) +
                                         4.0 * g_hz * g_hz);
    return {mean - split, mean + split};
}

struct ThreeCavityModes {
    double f1_hz;  // lowest
    double f2_hz;  // equals the outer-cavity intrinsic frequency
    double f3_hz;  // highest
};

// Closed-form spectrum of the symmetric 3-chain (outer cavities at omega1,
// middle at omega2, both couplings gamma). The middle eigenfrequency equals
// omega1 for every gamma: that mode has no weight on the centre cavity.
inline ThreeCavityModes three_cavity_modes_closed(double omega1_hz, double omega2_hz,
                                                  double gamma_hz) {
    const double mean = 0.5 * (omega1_hz + omega2_hz);
    const double split = 0.5 * std::sqrt((omega1_hz - omega2_hz) * (omega1_hz - omega2_hz) +
                                         8.0 * gamma_hz * gamma_hz);
    return {mean - split, omega1_hz, mean + split};
}

struct PairExtraction {
    double gamma_hz;
    double omega_hz;
};

// Invert the symmetric 2-cavity spectrum: gamma = (f2 - f1)/2, omega = f1 + gamma.
inline PairExtraction gamma_from_two_modes(double f21_hz, double f22_hz) {
    if (f22_hz < f21_hz) {
        throw OrderingError("two-mode extraction needs f22 >= f21");
    }
    const double gamma = 0.5 * (f22_hz - f21_hz);
    return {gamma, f21_hz + gamma};
}

struct TripleExtraction {
    double omega1_hz;
    double omega2_hz;
    double gamma_hz;
};

// Invert the symmetric 3-cavity spectrum. The middle eigenfrequency fixes
// omega1; the sum rule fixes omega2; the outer splitting fixes gamma.
inline TripleExtraction params_from_three_modes(double f31_hz, double f32_hz,
                                                double f33_hz) {
    if (!(f31_hz <= f32_hz && f32_hz <= f33_hz)) {
        throw OrderingError("three-mode extraction needs ascending frequencies");
    }
    const double omega1 = f32_hz;
    const double omega2 = f31_hz + f33_hz - f32_hz;
    const double span = f33_hz - f31_hz;
    const double radicand = (span * span - (omega1 - omega2) * (omega1 - omega2)) / 8.0;
    if (radicand < 0.0) {
        throw InconsistentSpectrumError(
            "spectrum not producible by a symmetric 3-chain (radicand " +
            std::to_string(radicand) + ")");
    }
    return {omega1, omega2, std::sqrt(radicand)};
}

}  // namespace cavitychain
