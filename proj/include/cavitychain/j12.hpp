#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "cavitychain/errors.hpp"
#include "cavitychain/mode_matrix.hpp"

namespace cavitychain {

enum class QubitPlacement { NN, NNN };  // hosts (1,2) or (1,3) of a 3-chain

inline std::string to_string(QubitPlacement p) {
    return p == QubitPlacement::NN ? "nn" : "nnn";
}

// The asymptotic inter-qubit coupling formulas appear in print as
// 2 g^2 gamma / Delta^2 (NN) and 2 g^2 gamma^2 / Delta^3 (NNN). Exact
// diagonalization of the same 5x5 matrices converges to half those values
// when J12 is defined as half the minimum branch distance, which is the
// definition used throughout. Both normalizations are kept: LiteralPaper
// reproduces the printed formulas, HalfGap matches the sweep definition.
enum class AsymptoticConvention { LiteralPaper, HalfGap };

inline double j12_asymptotic(QubitPlacement placement, double g_hz, double gamma_hz,
                             double delta_hz,
                             AsymptoticConvention convention = AsymptoticConvention::LiteralPaper) {
    if (delta_hz == 0.0) {
        throw Error("j12_asymptotic requires nonzero detuning");
    }
    const double d2 = delta_hz * delta_hz;
    double j = (placement == QubitPlacement::NN)
                   ? 2.0 * g_hz * g_hz * gamma_hz / d2
                   : 2.0 * g_hz * g_hz * gamma_hz * gamma_hz / (d2 * delta_hz);
    if (convention == AsymptoticConvention::HalfGap) j *= 0.5;
    return j;
}

struct J12SweepSettings {
    double q2_window_hz = 40e6;     // sweep q2 over q1 +/- window
    double q2_step_hz = 0.5e6;
    double refine_tol_hz = 1e3;     // golden-section stop on the q2 interval
    double weight_threshold = 0.5;  // qubit-likeness at the sweep endpoints
};

struct J12Point {
    double delta_hz = 0.0;  // q1 - omega
    double j12_hz = 0.0;    // half the minimum branch distance
    double q2_at_min_hz = 0.0;
};

struct J12Curve {
    QubitPlacement placement = QubitPlacement::NN;
    std::vector<double> detunings_hz;
    std::vector<double> couplings_hz;
    double q2_window_hz = 0.0;
    double q2_step_hz = 0.0;
};

namespace detail {

// Distance between the two most qubit-like eigenmodes of the 5x5 matrix.
// Selection is per point by summed squared eigenvector weight on the two
// qubit rows; sorting by frequency would mislabel hybridized branches.
struct QubitPairGap {
    double gap_hz;
    double weight_low;   // smaller of the two selected weights
    double f_low_hz;
    double f_high_hz;
};

inline QubitPairGap qubit_pair_gap(QubitPlacement placement, double omega_hz,
                                   double gamma_hz, double g_hz, double q1_hz,
                                   double q2_hz) {
    const ModeMatrix chain =
        build_chain_matrix({omega_hz, omega_hz, omega_hz}, {gamma_hz, gamma_hz});
    const int host2 = placement == QubitPlacement::NN ? 1 : 2;
    const ModeMatrix full = build_qubit_chain_matrix(
        chain, {{0, q1_hz, g_hz}, {host2, q2_hz, g_hz}});
    const EigenSolution s = eigenmodes(full);

    int best = -1, second = -1;
    double wbest = -1.0, wsecond = -1.0;
    for (int k = 0; k < 5; ++k) {
        const double w = s.vectors(3, k) * s.vectors(3, k) +
                         s.vectors(4, k) * s.vectors(4, k);
        if (w > wbest) {
            second = best;
            wsecond = wbest;
            best = k;
            wbest = w;
        } else if (w > wsecond) {
            second = k;
            wsecond = w;
        }
    }
    const double fa = s.frequencies(best);
    const double fb = s.frequencies(second);
    return {std::abs(fa - fb), wsecond, std::min(fa, fb), std::max(fa, fb)};
}

}  // namespace detail

// Half the minimum distance between the two qubit-like branches as q2 sweeps
// through q1, refined by golden-section search around the grid minimum.
// Branch identification must succeed at a sweep endpoint; failure there means
// the qubits are too hybridized (or dark) for a two-branch reading.
inline J12Point j12_sweep(QubitPlacement placement, double omega_hz, double gamma_hz,
                          double g_hz, double q1_hz,
                          const J12SweepSettings& settings = {}) {
    const auto gap = [&](double q2) {
        return detail::qubit_pair_gap(placement, omega_hz, gamma_hz, g_hz, q1_hz, q2);
    };

    const double lo = q1_hz - settings.q2_window_hz;
    const double hi = q1_hz + settings.q2_window_hz;
    const auto end_a = gap(lo);
    const auto end_b = gap(hi);
    if (end_a.weight_low <= settings.weight_threshold &&
        end_b.weight_low <= settings.weight_threshold) {
        throw BranchError("qubit branches not identifiable at sweep endpoints "
                          "(weights " + std::to_string(end_a.weight_low) + ", " +
                          std::to_string(end_b.weight_low) + ")");
    }

    int n = static_cast<int>(std::floor((hi - lo) / settings.q2_step_hz)) + 1;
    if (n < 5) n = 5;
    const double step = (hi - lo) / (n - 1);

    double best_gap = end_a.gap_hz;
    int best_i = 0;
    for (int i = 1; i < n; ++i) {
        const double q2 = lo + i * step;
        const double d = (i == n - 1) ? end_b.gap_hz : gap(q2).gap_hz;
        if (d < best_gap) {
            best_gap = d;
            best_i = i;
        }
    }

    double a = lo + std::max(0, best_i - 1) * step;
    double b = lo + std::min(n - 1, best_i + 1) * step;
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = gap(c).gap_hz;
    double fd = gap(d).gap_hz;
    while (b - a > settings.refine_tol_hz) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = gap(c).gap_hz;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = gap(d).gap_hz;
        }
    }
    const double q2_min = fc < fd ? c : d;
    const double gap_min = std::min({fc, fd, best_gap});
    return {q1_hz - omega_hz, 0.5 * gap_min, q2_min};
}

}  // namespace cavitychain
