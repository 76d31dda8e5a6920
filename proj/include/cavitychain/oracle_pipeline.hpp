#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cavitychain/bbq.hpp"
#include "cavitychain/branches.hpp"
#include "cavitychain/calibrate.hpp"
#include "cavitychain/circuit.hpp"
#include "cavitychain/errors.hpp"
#include "cavitychain/j12.hpp"
#include "cavitychain/network_modes.hpp"
#include "cavitychain/resonance.hpp"
#include "cavitychain/spectra.hpp"
#include "cavitychain/threading.hpp"

namespace cavitychain {

// Inter-qubit coupling extraction on the circuit oracle, following the
// measurement-style procedure: fix Q1's junction inductance from the nominal
// detuning, sweep Q2's, read Im Z pole positions at Q1's lumped port, and take
// half the minimum branch distance of the assembled avoided crossing.
struct OraclePipelineSettings {
    double freq_step_hz = 1e6;         // trace grid step
    double refine_tol_hz = 1e3;
    double window_half_hz = 30e6;      // branch window around the measured q1
    double band_guard_hz = 10e6;       // keep-out around the cavity band
    double q2_half_span_hz = 24e6;     // nominal q2 sweep half-width
    int lj2_points = 41;
    double participation_min = 0.45;   // accept q1 when c_sigma/c_p is above this
    int threads = 1;
};

struct OracleJ12Point {
    double delta_nominal_hz = 0.0;
    double q1_measured_hz = std::numeric_limits<double>::quiet_NaN();
    double participation = std::numeric_limits<double>::quiet_NaN();
    double j12_hz = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";  // ok | q1-in-band | low-participation | too-few-points

    bool ok() const { return status == "ok"; }
};

namespace detail {

inline std::pair<double, double> cavity_band(const CalibratedChain& cal, int cavities) {
    const auto f = network_eigenfrequencies(build_cavity_circuit(cal.chain(cavities)).net);
    return {f.front(), f.back()};
}

// The qubit-like pole of the single-qubit array: the Im Z pole farthest from
// every empty-array cavity line.
inline std::optional<double> measure_qubit_pole(const CalibratedChain& cal, int cavities,
                                                int host, double l_j1,
                                                const std::vector<double>& cavity_lines,
                                                double f_center_hz, double half_span_hz,
                                                const OraclePipelineSettings& s) {
    ChainSpec spec = cal.chain(cavities, {cal.qubit(host, l_j1, "lp1")});
    const BuiltCircuit built = build_cavity_circuit(spec);
    SweepGrid grid{f_center_hz - half_span_hz, f_center_hz + half_span_hz, s.freq_step_hz};
    const SpectrumTrace z = port_impedance_spectrum(built.net, "lp1", grid, s.threads);
    const ResonanceSet poles = find_imZ_poles(z, s.refine_tol_hz);
    double best = 0.0, best_score = -1.0;
    for (double f : poles.frequencies_hz) {
        double score = std::numeric_limits<double>::infinity();
        for (double c : cavity_lines) score = std::min(score, std::abs(f - c));
        if (score > best_score) {
            best_score = score;
            best = f;
        }
    }
    if (best_score <= 0.0) return std::nullopt;
    return best;
}

// BBQ participation of the measured pole: c_sigma over the local reactance
// slope capacitance. Deeply hybridized polaritons read well below one.
inline double pole_participation(const CalibratedChain& cal, int cavities, int host,
                                 double l_j1, double f_pole_hz,
                                 const OraclePipelineSettings& s) {
    ChainSpec spec = cal.chain(cavities, {cal.qubit(host, l_j1, "lp1")});
    const BuiltCircuit built = build_cavity_circuit(spec);
    SweepGrid grid{f_pole_hz - 5e6, f_pole_hz + 5e6, s.freq_step_hz};
    const SpectrumTrace y = port_admittance_spectrum(built.net, "lp1", grid, s.threads);
    const double c_p = bbq_mode_capacitance(y, f_pole_hz);
    return cal.c_sigma / c_p;
}

}  // namespace detail

struct OracleJ12Sweep {
    OracleJ12Point point;
    AvoidedCrossing crossing;  // branches versus L_J2 (empty when skipped)
};

inline OracleJ12Sweep oracle_j12_point(const CalibratedChain& cal, QubitPlacement placement,
                                       double omega_hz, double delta_nominal_hz,
                                       const OraclePipelineSettings& s = {}) {
    constexpr int cavities = 3;
    const int host1 = 0;
    const int host2 = placement == QubitPlacement::NN ? 1 : 2;
    OracleJ12Sweep out;
    out.point.delta_nominal_hz = delta_nominal_hz;

    const auto [band_lo, band_hi] = detail::cavity_band(cal, cavities);
    const auto cavity_lines =
        network_eigenfrequencies(build_cavity_circuit(cal.chain(cavities)).net);

    const double q1_nominal = omega_hz + delta_nominal_hz;
    const double l_j1 = cal.l_j_for(q1_nominal);
    const double span = std::abs(delta_nominal_hz) + 250e6;
    const auto fq1 = detail::measure_qubit_pole(cal, cavities, host1, l_j1, cavity_lines,
                                                omega_hz, span, s);
    if (!fq1) {
        out.point.status = "q1-in-band";
        return out;
    }
    out.point.q1_measured_hz = *fq1;
    if (*fq1 > band_lo - s.band_guard_hz && *fq1 < band_hi + s.band_guard_hz) {
        out.point.status = "q1-in-band";
        return out;
    }

    out.point.participation = detail::pole_participation(cal, cavities, host1, l_j1, *fq1, s);
    if (out.point.participation < s.participation_min) {
        out.point.status = "low-participation";
        return out;
    }

    FrequencyWindow window{};
    if (*fq1 < band_lo) {
        window = {*fq1 - s.window_half_hz,
                  std::min(*fq1 + s.window_half_hz, band_lo - s.band_guard_hz)};
    } else {
        window = {std::max(*fq1 - s.window_half_hz, band_hi + s.band_guard_hz),
                  *fq1 + s.window_half_hz};
    }

    // L_J2 sweep arranged ascending in L_J2 (descending nominal q2)
    std::vector<std::pair<double, ResonanceSet>> sweep(s.lj2_points);
    parallel_for(s.lj2_points, s.threads, [&](int i) {
        const double q2_nominal = q1_nominal + s.q2_half_span_hz -
                                  2.0 * s.q2_half_span_hz * i / (s.lj2_points - 1);
        const double l_j2 = cal.l_j_for(q2_nominal);
        ChainSpec spec = cal.chain(cavities, {cal.qubit(host1, l_j1, "lp1"),
                                              cal.qubit(host2, l_j2, "lp2")});
        const BuiltCircuit built = build_cavity_circuit(spec);
        SweepGrid grid{window.lo_hz, window.hi_hz, s.freq_step_hz};
        const SpectrumTrace z = port_impedance_spectrum(built.net, "lp1", grid, 1);
        sweep[i] = {l_j2, find_imZ_poles(z, s.refine_tol_hz)};
    });

    try {
        out.crossing = assemble_branches(sweep, window);
        const MinGapResult mg = min_gap(out.crossing);
        // A crossing narrower than the grid can resolve loses its pole pair
        // right where the minimum sits; the surviving points then floor the
        // gap at the grid scale. Require both branches on the sweep steps
        // around the minimum, otherwise report the point as unresolved.
        size_t imin = 0;
        double dmin = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < out.crossing.sweep_values.size(); ++i) {
            if (!out.crossing.branch_low[i] || !out.crossing.branch_high[i]) continue;
            const double d = *out.crossing.branch_high[i] - *out.crossing.branch_low[i];
            if (d < dmin) {
                dmin = d;
                imin = i;
            }
        }
        const auto has_pair = [&](size_t i) {
            return i < out.crossing.sweep_values.size() && out.crossing.branch_low[i] &&
                   out.crossing.branch_high[i];
        };
        const bool resolved =
            imin > 0 && has_pair(imin - 1) && has_pair(imin + 1);
        if (resolved) {
            out.point.j12_hz = mg.half_gap_hz;
        } else {
            out.point.status = "unresolved-crossing";
        }
    } catch (const InsufficientDataError&) {
        out.point.status = "too-few-points";
    } catch (const AmbiguousWindowError&) {
        out.point.status = "ambiguous-window";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dark-state scan: one qubit in a chosen cavity of the 3-cavity array, its
// junction inductance swept so the qubit line crosses the whole band. Modes
// the qubit couples to show a standoff band (avoided crossing); a mode with
// no amplitude at the qubit's cavity is crossed exactly and never appears in
// the port data.

struct DarkModeResult {
    double mode_hz = 0.0;
    double gap_hz = 0.0;   // closest approach band around the mode
    bool dark = false;     // qubit line crosses the mode within tolerance
};

struct DarkScan {
    std::vector<std::pair<double, ResonanceSet>> fan;  // (L_J, ImY zeros)
    std::vector<DarkModeResult> modes;
};

inline DarkScan dark_state_scan(const CalibratedChain& cal, int host,
                                double q_span_hz = 150e6, double q_step_hz = 2e6,
                                const OraclePipelineSettings& s = {}) {
    constexpr int cavities = 3;
    const auto lines = network_eigenfrequencies(build_cavity_circuit(cal.chain(cavities)).net);
    const double f_lo = lines.front() - q_span_hz;
    const double f_hi = lines.back() + q_span_hz;
    const double trace_margin = 350e6;
    SweepGrid grid{f_lo - trace_margin, f_hi + trace_margin, s.freq_step_hz};

    auto zeros_at = [&](double l_j) {
        ChainSpec spec = cal.chain(cavities, {cal.qubit(host, l_j, "lp")});
        const BuiltCircuit built = build_cavity_circuit(spec);
        const SpectrumTrace y = port_admittance_spectrum(built.net, "lp", grid, 1);
        return find_imY_zeros(y, s.refine_tol_hz);
    };

    DarkScan scan;
    const int n = static_cast<int>(std::floor((f_hi - f_lo) / q_step_hz)) + 1;
    std::vector<double> ljs(n);
    for (int i = 0; i < n; ++i) ljs[i] = cal.l_j_for(f_hi - i * q_step_hz);
    scan.fan.resize(n);
    parallel_for(n, s.threads, [&](int i) { scan.fan[i] = {ljs[i], zeros_at(ljs[i])}; });

    for (double mode : lines) {
        DarkModeResult r;
        r.mode_hz = mode;
        // nearest approach from below and above over the whole fan
        double below = -std::numeric_limits<double>::infinity();
        double above = std::numeric_limits<double>::infinity();
        std::optional<size_t> crossing_i;
        std::optional<double> prev_nearest;
        for (size_t i = 0; i < scan.fan.size(); ++i) {
            const auto& zs = scan.fan[i].second.frequencies_hz;
            double nearest = std::numeric_limits<double>::quiet_NaN();
            double best = std::numeric_limits<double>::infinity();
            for (double z : zs) {
                if (std::abs(z - mode) < best) {
                    best = std::abs(z - mode);
                    nearest = z;
                }
                if (z < mode) below = std::max(below, z);
                if (z > mode) above = std::min(above, z);
            }
            if (prev_nearest && std::isfinite(nearest) &&
                (*prev_nearest - mode) * (nearest - mode) < 0.0 &&
                std::abs(*prev_nearest - mode) < 2.0 * q_step_hz &&
                std::abs(nearest - mode) < 2.0 * q_step_hz) {
                crossing_i = i;  // the qubit line stepped across the mode
            }
            if (std::isfinite(nearest)) prev_nearest = nearest;
        }
        if (crossing_i) {
            // bisect on L_J for the zero that lands on the mode frequency
            double a = ljs[*crossing_i - 1], b = ljs[*crossing_i];
            if (a > b) std::swap(a, b);
            double residual = std::numeric_limits<double>::infinity();
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                const ResonanceSet zs = zeros_at(m);
                double nearest = std::numeric_limits<double>::infinity();
                double val = 0.0;
                for (double z : zs.frequencies_hz) {
                    if (std::abs(z - mode) < nearest) {
                        nearest = std::abs(z - mode);
                        val = z;
                    }
                }
                residual = std::min(residual, nearest);
                if (residual < 0.5 * s.refine_tol_hz) break;
                const ResonanceSet za = zeros_at(a);
                double na = std::numeric_limits<double>::infinity();
                double va = 0.0;
                for (double z : za.frequencies_hz) {
                    if (std::abs(z - mode) < na) {
                        na = std::abs(z - mode);
                        va = z;
                    }
                }
                if ((va - mode) * (val - mode) <= 0.0) {
                    b = m;
                } else {
                    a = m;
                }
            }
            r.dark = true;
            r.gap_hz = 2.0 * residual;
        } else {
            r.dark = false;
            r.gap_hz = (std::isfinite(above) && std::isfinite(below)) ? above - below
                                                                      : 0.0;
        }
        scan.modes.push_back(r);
    }
    return scan;
}

}  // namespace cavitychain
