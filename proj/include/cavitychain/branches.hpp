#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cavitychain/errors.hpp"
#include "cavitychain/resonance.hpp"

namespace cavitychain {

// Two tracked resonance branches versus a swept value (junction inductance or
// a qubit-frequency equivalent). Entries are absent where a branch went dark.
struct AvoidedCrossing {
    std::vector<double> sweep_values;               // ascending L_J in H
    std::vector<std::optional<double>> branch_low;  // Hz
    std::vector<std::optional<double>> branch_high;

    int common_points() const {
        int n = 0;
        for (size_t i = 0; i < sweep_values.size(); ++i) {
            if (branch_low[i] && branch_high[i]) ++n;
        }
        return n;
    }
};

struct FrequencyWindow {
    double lo_hz;
    double hi_hz;
    bool contains(double f) const { return f >= lo_hz && f <= hi_hz; }
};

struct BranchAssemblySettings {
    double motion_factor = 5.0;     // join radius in units of median branch motion
    double motion_floor_hz = 250e3; // keeps static branches joinable
    int ambiguous_run = 3;          // consecutive >2-detection points before error
};

struct MinGapResult {
    double half_gap_hz;
    double location;  // sweep value at the (refined) minimum
};

namespace detail {

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

// Assign in-window detections to two branches by nearest-neighbour continuity
// across consecutive sweep values. Missing detections (dark states, grid
// resolution) leave gaps rather than fabricated points. A detection only
// joins a branch when it moved less than motion_factor times that branch's
// median inter-point motion.
inline AvoidedCrossing assemble_branches(
    const std::vector<std::pair<double, ResonanceSet>>& sweep,
    const FrequencyWindow& window, const BranchAssemblySettings& settings = {}) {
    if (sweep.size() < 5) {
        throw InsufficientDataError("branch assembly needs at least 5 sweep points, got " +
                                    std::to_string(sweep.size()));
    }
    AvoidedCrossing ac;
    ac.sweep_values.reserve(sweep.size());
    ac.branch_low.assign(sweep.size(), std::nullopt);
    ac.branch_high.assign(sweep.size(), std::nullopt);

    std::optional<double> last_low, last_high;
    std::vector<double> motion_low, motion_high;
    int ambiguous_streak = 0;

    auto join_radius = [&](const std::vector<double>& motions) {
        const double m = detail::median(motions);
        return settings.motion_factor * std::max(m, settings.motion_floor_hz);
    };

    for (size_t i = 0; i < sweep.size(); ++i) {
        ac.sweep_values.push_back(sweep[i].first);
        std::vector<double> dets;
        for (double f : sweep[i].second.frequencies_hz) {
            if (window.contains(f)) dets.push_back(f);
        }
        std::sort(dets.begin(), dets.end());

        if (dets.size() > 2) {
            if (++ambiguous_streak >= settings.ambiguous_run) {
                throw AmbiguousWindowError(
                    "more than two branches persistently inside the window (" +
                    std::to_string(dets.size()) + " detections)");
            }
            if (last_low && last_high) {
                // keep the two detections closest to the tracked branches
                auto nearest = [&](double target) {
                    return *std::min_element(dets.begin(), dets.end(),
                                             [&](double a, double b) {
                                                 return std::abs(a - target) <
                                                        std::abs(b - target);
                                             });
                };
                double lo = nearest(*last_low);
                double hi = nearest(*last_high);
                if (lo > hi) std::swap(lo, hi);
                if (lo != hi) {
                    dets = {lo, hi};
                } else {
                    continue;  // cannot disambiguate this point
                }
            } else {
                continue;
            }
        } else {
            ambiguous_streak = 0;
        }

        if (dets.size() == 2) {
            const double lo = dets[0], hi = dets[1];
            if (last_low) motion_low.push_back(std::abs(lo - *last_low));
            if (last_high) motion_high.push_back(std::abs(hi - *last_high));
            ac.branch_low[i] = lo;
            ac.branch_high[i] = hi;
            last_low = lo;
            last_high = hi;
        } else if (dets.size() == 1) {
            const double x = dets[0];
            if (!last_low && !last_high) {
                ac.branch_low[i] = x;  // seed; realigned once both appear
                last_low = x;
            } else {
                const double d_lo = last_low ? std::abs(x - *last_low) : 1e300;
                const double d_hi = last_high ? std::abs(x - *last_high) : 1e300;
                if (d_lo <= d_hi &&
                    (motion_low.size() < 3 || d_lo <= join_radius(motion_low))) {
                    if (last_low) motion_low.push_back(d_lo);
                    ac.branch_low[i] = x;
                    last_low = x;
                } else if (d_hi < d_lo &&
                           (motion_high.size() < 3 || d_hi <= join_radius(motion_high))) {
                    motion_high.push_back(d_hi);
                    ac.branch_high[i] = x;
                    last_high = x;
                }
                // otherwise: implausible jump, leave a gap
            }
        }
    }
    return ac;
}

// Half the minimum branch distance, with parabolic refinement across the
// three sweep points bracketing the minimum. Flat separations fall back to
// the discrete minimum.
inline MinGapResult min_gap(const AvoidedCrossing& ac) {
    std::vector<double> x, d;
    for (size_t i = 0; i < ac.sweep_values.size(); ++i) {
        if (ac.branch_low[i] && ac.branch_high[i]) {
            x.push_back(ac.sweep_values[i]);
            d.push_back(*ac.branch_high[i] - *ac.branch_low[i]);
        }
    }
    if (x.size() < 3) {
        throw InsufficientDataError("min gap needs both branches at >= 3 sweep values, got " +
                                    std::to_string(x.size()));
    }
    size_t imin = 0;
    for (size_t i = 1; i < d.size(); ++i) {
        if (d[i] < d[imin]) imin = i;
    }
    double gap = d[imin];
    double loc = x[imin];
    if (imin > 0 && imin + 1 < d.size()) {
        const double x0 = x[imin - 1], x1 = x[imin], x2 = x[imin + 1];
        const double y0 = d[imin - 1], y1 = d[imin], y2 = d[imin + 1];
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        if (denom != 0.0) {
            const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
            const double b =
                (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
            if (a > 0.0) {
                const double xv = -b / (2.0 * a);
                if (xv >= x0 && xv <= x2) {
                    const double c =
                        y0 - a * x0 * x0 - b * x0;
                    const double yv = a * xv * xv + b * xv + c;
                    // a vertex below zero means the branches actually cross
                    if (yv <= gap) {
                        gap = std::max(yv, 0.0);
                        loc = xv;
                    }
                }
            }
        }
    }
    return {0.5 * gap, loc};
}

}  // namespace cavitychain
