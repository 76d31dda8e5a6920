#pragma once

#include <cmath>
#include <string>

#include "cavitychain/constants.hpp"
#include "cavitychain/errors.hpp"
#include "cavitychain/resonance.hpp"
#include "cavitychain/spectra.hpp"

namespace cavitychain {

// The printed cross-Kerr relation chi_qr = -E_C g^2 / Delta_qr^2, applied to
// the printed chi and Delta values, returns a coupling well above the
// reported one; the same relation with a factor 2 reproduces it. Both are
// kept; FactorTwo is the default.
enum class KerrConvention { LiteralB4, FactorTwo };

inline std::string to_string(KerrConvention c) {
    return c == KerrConvention::LiteralB4 ? "literal-B4" : "factor-2";
}

struct QubitEnergies {
    double c_sigma_f;  // F
    double e_c_hz;     // charging energy / h
    double e_j_hz;     // Josephson energy / h
};

// c_sigma from the LC resonance formula, E_C = e^2/(2 c_sigma h),
// E_J = phi0^2/(L_J h).
inline QubitEnergies csigma_ec_ej(double q_hz, double l_j) {
    if (!(q_hz > 0.0) || !(l_j > 0.0)) {
        throw Error("csigma_ec_ej needs positive q and L_J");
    }
    const double w = 2.0 * k_pi * q_hz;
    const double c_sigma = 1.0 / (w * w * l_j);
    const double e_c = k_elementary_charge * k_elementary_charge /
                       (2.0 * c_sigma * k_planck);
    const double e_j = k_phi0_reduced * k_phi0_reduced / (l_j * k_planck);
    return {c_sigma, e_c, e_j};
}

// Mode capacitance from the reactance slope at an Im Y zero:
// c_p = (1/2) d(Im Y)/d(omega), with omega angular so an isolated parallel
// LC returns exactly its C. Central differences on the trace interpolant with
// one Richardson step.
inline double bbq_mode_capacitance(const SpectrumTrace& trace, double f_p_hz,
                                   double rel_step = 1.0) {
    if (trace.kind != TraceKind::Admittance) {
        throw GridError("bbq_mode_capacitance needs an admittance trace");
    }
    const int n = static_cast<int>(trace.samples.size());
    if (n < 5) throw GridError("trace too short for differentiation");
    const double h = trace.grid.step_hz * rel_step;
    if (f_p_hz - h < trace.grid.start_hz || f_p_hz + h > trace.grid.at(n - 1)) {
        throw GridError("mode frequency outside the differentiable trace range");
    }
    detail::SampledCurve curve(trace.grid, detail::imag_samples(trace));
    const double d1 = (curve(f_p_hz + h) - curve(f_p_hz - h)) / (2.0 * h);
    const double d2 = (curve(f_p_hz + 0.5 * h) - curve(f_p_hz - 0.5 * h)) / h;
    const double dimy_df = (4.0 * d2 - d1) / 3.0;
    return 0.5 * dimy_df / (2.0 * k_pi);
}

struct KerrReport {
    double f_q_hz = 0.0;
    double f_r_hz = 0.0;
    double c_q_f = 0.0;
    double c_r_f = 0.0;
    double l_q_h = 0.0;
    double l_r_h = 0.0;
    double chi_q_hz = 0.0;   // self-Kerr of the qubit mode (negative)
    double chi_r_hz = 0.0;   // self-Kerr of the cavity mode (negative)
    double chi_qr_hz = 0.0;  // cross-Kerr, -2 sqrt(chi_q chi_r)
    double delta_qr_hz = 0.0;
    double c_sigma_f = 0.0;
    double e_c_hz = 0.0;
    double e_j_hz = 0.0;
    double g_hz = 0.0;
    KerrConvention convention = KerrConvention::FactorTwo;
};

namespace detail {

inline double mode_inductance(double f_hz, double c_f) {
    const double w = 2.0 * k_pi * f_hz;
    return 1.0 / (w * w * c_f);
}

inline double self_kerr_hz(double l_p, double c_p, double l_j) {
    return -l_p * k_elementary_charge * k_elementary_charge /
           (2.0 * l_j * c_p * k_planck);
}

}  // namespace detail

// Full chain from an admittance trace: mode capacitances and inductances at
// the two supplied Im Y zeros, self- and cross-Kerr, and the coupling g from
// the cross-Kerr relation under the chosen convention. E_C comes from
// c_sigma evaluated at the qubit zero through the LC resonance formula.
inline KerrReport bbq_kerr(const SpectrumTrace& trace, double f_q_hz, double f_r_hz,
                           double l_j,
                           KerrConvention convention = KerrConvention::FactorTwo) {
    if (!(l_j > 0.0)) throw Error("bbq_kerr needs L_J > 0");
    if (f_q_hz == f_r_hz) throw Error("bbq_kerr needs two distinct mode frequencies");
    KerrReport r;
    r.f_q_hz = f_q_hz;
    r.f_r_hz = f_r_hz;
    r.convention = convention;
    r.c_q_f = bbq_mode_capacitance(trace, f_q_hz);
    r.c_r_f = bbq_mode_capacitance(trace, f_r_hz);
    r.l_q_h = detail::mode_inductance(f_q_hz, r.c_q_f);
    r.l_r_h = detail::mode_inductance(f_r_hz, r.c_r_f);
    r.chi_q_hz = detail::self_kerr_hz(r.l_q_h, r.c_q_f, l_j);
    r.chi_r_hz = detail::self_kerr_hz(r.l_r_h, r.c_r_f, l_j);
    const double product = r.chi_q_hz * r.chi_r_hz;
    if (product < 0.0) {
        throw InconsistentSpectrumError("self-Kerr values have inconsistent signs");
    }
    r.chi_qr_hz = -2.0 * std::sqrt(product);
    r.delta_qr_hz = f_q_hz - f_r_hz;
    const QubitEnergies en = csigma_ec_ej(f_q_hz, l_j);
    r.c_sigma_f = en.c_sigma_f;
    r.e_c_hz = en.e_c_hz;
    r.e_j_hz = en.e_j_hz;
    const double k = convention == KerrConvention::LiteralB4 ? 1.0 : 2.0;
    r.g_hz = std::abs(r.delta_qr_hz) * std::sqrt(std::abs(r.chi_qr_hz) / (k * r.e_c_hz));
    return r;
}

// Same relation applied to externally supplied Kerr numbers (no trace).
inline KerrReport bbq_kerr_from_values(double chi_q_hz, double chi_r_hz,
                                       double delta_qr_hz, double e_c_hz,
                                       KerrConvention convention = KerrConvention::FactorTwo) {
    if (chi_q_hz * chi_r_hz < 0.0) {
        throw InconsistentSpectrumError("self-Kerr values have inconsistent signs");
    }
    KerrReport r;
    r.convention = convention;
    r.chi_q_hz = chi_q_hz;
    r.chi_r_hz = chi_r_hz;
    r.chi_qr_hz = -2.0 * std::sqrt(chi_q_hz * chi_r_hz);
    r.delta_qr_hz = delta_qr_hz;
    r.e_c_hz = e_c_hz;
    const double k = convention == KerrConvention::LiteralB4 ? 1.0 : 2.0;
    r.g_hz = std::abs(delta_qr_hz) * std::sqrt(std::abs(r.chi_qr_hz) / (k * e_c_hz));
    return r;
}

}  // namespace cavitychain
