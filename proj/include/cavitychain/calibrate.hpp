#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cavitychain/circuit.hpp"
#include "cavitychain/closed_form.hpp"
#include "cavitychain/constants.hpp"
#include "cavitychain/errors.hpp"
#include "cavitychain/network_modes.hpp"

namespace cavitychain {

struct CalibrationTargets {
    double omega_hz = 0.0;              // single-cavity mode
    std::optional<double> gamma_hz;     // inter-cavity coupling
    std::optional<double> g_hz;         // qubit-cavity coupling
    std::optional<double> q_hz;         // qubit frequency at the reference L_J
};

struct CalibrationOptions {
    double base_c = 400e-15;     // tank capacitance, fixed
    double c_sigma = 78e-15;     // decoupled qubit branch capacitance target
    double c_j = 10e-15;         // junction capacitance
    double tolerance = 5e-3;     // relative, on every extracted target
    int max_iterations = 60;
};

// Component values for the calibrated chain; qubits built from these are
// interchangeable (identical g), with per-qubit L_J assigned by the caller.
struct CalibratedChain {
    double tank_l = 0.0;
    double tank_c = 0.0;
    double coupling_c = 0.0;
    double qubit_c_g = 0.0;
    double qubit_c_a = 0.0;
    double qubit_c_j = 0.0;
    double qubit_l_j = 0.0;   // reference L_J hitting the q target
    double c_sigma = 0.0;

    QubitSpec qubit(int host, double l_j, const std::string& port = "") const {
        return {host, qubit_c_g, qubit_c_a, qubit_c_j, l_j, port};
    }

    ChainSpec chain(int cavities, std::vector<QubitSpec> qubits = {}) const {
        ChainSpec s;
        s.cavities = cavities;
        s.tank_l = tank_l;
        s.tank_c = tank_c;
        s.coupling_c = coupling_c;
        s.qubits = std::move(qubits);
        return s;
    }

    // L_J that maps to a nominal qubit frequency through the LC resonance
    // formula with the calibrated c_sigma.
    double l_j_for(double q_hz) const {
        const double w = 2.0 * k_pi * q_hz;
        return 1.0 / (w * w * c_sigma);
    }
};

namespace detail {

inline double extracted_g_min_gap(const CalibratedChain& c, double c_g, double l_j_ref) {
    // half the minimum two-mode gap over an L_J scan through the crossing
    double best = 1e300;
    const double lo = 0.62 * l_j_ref, hi = 1.7 * l_j_ref;
    const int n = 141;
    for (int i = 0; i < n; ++i) {
        const double lj = lo + (hi - lo) * i / (n - 1);
        const double c_a = c.c_sigma - c.qubit_c_j - c_g * c.tank_c / (c_g + c.tank_c);
        ChainSpec s;
        s.cavities = 1;
        s.tank_l = c.tank_l;
        s.tank_c = c.tank_c;
        s.qubits = {{0, c_g, c_a, c.qubit_c_j, lj, "lp"}};
        const auto f = network_eigenfrequencies(build_cavity_circuit(s).net);
        if (f.size() >= 2) best = std::min(best, f[1] - f[0]);
    }
    return 0.5 * best;
}

}  // namespace detail

// Map (omega, gamma, g, q) targets onto circuit values: first-order relations
// seed each component (C_c ~ 2 gamma C / omega for the coupling, the
// qubit coupling capacitor from the resonant-gap formula, L_J from the LC
// resonance), then secant refinement against extracted network
// eigenfrequencies until every requested target is met.
inline CalibratedChain calibrate_chain(const CalibrationTargets& targets,
                                       const CalibrationOptions& options = {}) {
    if (!(targets.omega_hz > 0.0)) throw CalibrationError("omega target must be positive");
    if (targets.gamma_hz && *targets.gamma_hz < 0.0) {
        throw CalibrationError("gamma target must be nonnegative");
    }
    CalibratedChain c;
    c.tank_c = options.base_c;
    c.qubit_c_j = options.c_j;
    c.c_sigma = options.c_sigma;
    const double w0 = 2.0 * k_pi * targets.omega_hz;
    c.tank_l = 1.0 / (w0 * w0 * c.tank_c);

    // Stage 1: single tank is exact by construction; verify anyway.
    {
        const auto f = network_eigenfrequencies(build_cavity_circuit(c.chain(1)).net);
        if (f.size() != 1 || std::abs(f[0] - targets.omega_hz) > 1e-6 * targets.omega_hz) {
            throw CalibrationError("single-tank stage failed");
        }
    }

    // Stage 2: two-cavity array fixes C_c (gamma) and retrims L (omega).
    if (targets.gamma_hz && *targets.gamma_hz > 0.0) {
        const double gamma_t = *targets.gamma_hz;
        c.coupling_c = 2.0 * gamma_t * c.tank_c / targets.omega_hz;
        double gamma_x = 0.0, omega_x = 0.0;
        for (int it = 0; it < options.max_iterations; ++it) {
            const auto f = network_eigenfrequencies(build_cavity_circuit(c.chain(2)).net);
            if (f.size() != 2) throw CalibrationError("two-cavity stage lost a mode");
            const PairExtraction px = gamma_from_two_modes(f[0], f[1]);
            gamma_x = px.gamma_hz;
            omega_x = px.omega_hz;
            if (std::abs(gamma_x - gamma_t) < 1e-9 * gamma_t &&
                std::abs(omega_x - targets.omega_hz) < 1e-12 * targets.omega_hz) {
                break;
            }
            c.coupling_c *= gamma_t / gamma_x;
            const double ratio = omega_x / targets.omega_hz;
            c.tank_l *= ratio * ratio;
        }
        if (std::abs(gamma_x - gamma_t) > options.tolerance * gamma_t) {
            std::ostringstream os;
            os << "gamma calibration did not converge: residual "
               << (gamma_x - gamma_t) << " Hz";
            throw CalibrationError(os.str());
        }
    } else if (targets.gamma_hz && *targets.gamma_hz == 0.0) {
        c.coupling_c = 0.0;
    }

    // Stage 3: single cavity + qubit fixes C_g (g) and L_J (q).
    if (targets.g_hz || targets.q_hz) {
        if (!targets.g_hz || !targets.q_hz) {
            throw CalibrationError("qubit calibration needs both g and q targets");
        }
        const double g_t = *targets.g_hz;
        const double q_t = *targets.q_hz;
        c.qubit_l_j = c.l_j_for(q_t);
        c.qubit_c_g = 2.0 * g_t * std::sqrt(c.c_sigma * c.tank_c) / targets.omega_hz;
        if (c.qubit_c_g + c.qubit_c_j >= c.c_sigma) {
            throw CalibrationError("g target incompatible with the c_sigma budget");
        }

        // secant on C_g against the extracted min-gap g
        double cg0 = c.qubit_c_g;
        double g0 = detail::extracted_g_min_gap(c, cg0, c.qubit_l_j);
        double cg1 = cg0 * g_t / g0;
        double g1 = detail::extracted_g_min_gap(c, cg1, c.qubit_l_j);
        for (int it = 0; it < options.max_iterations; ++it) {
            if (std::abs(g1 - g_t) < 2e-4 * g_t) break;
            if (g1 == g0) break;
            const double cg2 = cg1 + (g_t - g1) * (cg1 - cg0) / (g1 - g0);
            cg0 = cg1;
            g0 = g1;
            cg1 = cg2;
            g1 = detail::extracted_g_min_gap(c, cg1, c.qubit_l_j);
        }
        c.qubit_c_g = cg1;
        c.qubit_c_a = c.c_sigma - c.qubit_c_j -
                      c.qubit_c_g * c.tank_c / (c.qubit_c_g + c.tank_c);
        if (!(c.qubit_c_a > 0.0)) {
            throw CalibrationError("antenna shunt capacitance came out nonpositive");
        }

        // refine L_J so the qubit-like mode lands exactly on the q target
        for (int it = 0; it < options.max_iterations; ++it) {
            ChainSpec s = c.chain(1, {c.qubit(0, c.qubit_l_j, "lp")});
            const auto f = network_eigenfrequencies(build_cavity_circuit(s).net);
            if (f.size() != 2) throw CalibrationError("qubit stage lost a mode");
            const double qx = std::abs(f[0] - q_t) < std::abs(f[1] - q_t) ? f[0] : f[1];
            if (std::abs(qx - q_t) < 1e-12 * q_t) break;
            const double ratio = qx / q_t;
            c.qubit_l_j *= ratio * ratio;
        }

        if (std::abs(g1 - g_t) > options.tolerance * g_t) {
            std::ostringstream os;
            os << "g calibration did not converge: residual " << (g1 - g_t) << " Hz";
            throw CalibrationError(os.str());
        }
    }
    return c;
}

}  // namespace cavitychain
