#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cavitychain/errors.hpp"
#include "cavitychain/spectra.hpp"

namespace cavitychain {

enum class ResonanceKind { YZero, ZPole, SPeak };

struct ResonanceSet {
    std::vector<double> frequencies_hz;  // ascending
    ResonanceKind kind = ResonanceKind::YZero;
    double tolerance_hz = 1e3;
};

namespace detail {

// Local Lagrange interpolant through the six samples around x (four or two
// near the grid edges). Traces are data (possibly read back from CSV), so
// refinement work must live entirely on the sampled values; six points keep
// interpolated derivatives well below the stated slope tolerances.
class SampledCurve {
  public:
    SampledCurve(const SweepGrid& grid, std::vector<double> values)
        : grid_(grid), v_(std::move(values)) {}

    double operator()(double x) const {
        const int n = static_cast<int>(v_.size());
        const double t = (x - grid_.start_hz) / grid_.step_hz;
        const int cell = static_cast<int>(std::floor(t));
        int lo = cell - 2;
        int points = 6;
        if (lo < 0 || lo + 5 > n - 1) {
            lo = cell - 1;
            points = 4;
            if (lo < 0 || lo + 3 > n - 1) {
                lo = std::clamp(cell, 0, n - 2);
                points = 2;
            }
        }
        double acc = 0.0;
        for (int j = 0; j < points; ++j) {
            double basis = 1.0;
            for (int k = 0; k < points; ++k) {
                if (k == j) continue;
                basis *= (t - (lo + k)) / static_cast<double>(j - k);
            }
            acc += v_[lo + j] * basis;
        }
        return acc;
    }

    double sample(int i) const { return v_[i]; }
    int size() const { return static_cast<int>(v_.size()); }

  private:
    SweepGrid grid_;
    std::vector<double> v_;
};

inline double bisect_zero(const SampledCurve& f, double a, double b, double tol) {
    double fa = f(a);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fa * fm <= 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

inline std::vector<double> imag_samples(const SpectrumTrace& t) {
    std::vector<double> v(t.samples.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = t.samples[i].imag();
    return v;
}

}  // namespace detail

// Zeros of Im Y mark resonances seen from the port. On a lossless trace they
// are the upward sign changes; downward flips between large-magnitude samples
// are the reactance poles and are excluded.
inline ResonanceSet find_imY_zeros(const SpectrumTrace& trace, double tolerance_hz = 1e3) {
    if (trace.kind != TraceKind::Admittance) {
        throw GridError("find_imY_zeros needs an admittance trace");
    }
    const int n = static_cast<int>(trace.samples.size());
    if (n < 2) throw GridError("trace has fewer than 2 grid points");
    detail::SampledCurve curve(trace.grid, detail::imag_samples(trace));
    ResonanceSet out;
    out.kind = ResonanceKind::YZero;
    out.tolerance_hz = tolerance_hz;
    for (int i = 0; i + 1 < n; ++i) {
        if (trace.pole_flag[i] || trace.pole_flag[i + 1]) continue;
        const double a = curve.sample(i);
        const double b = curve.sample(i + 1);
        if (a == 0.0) {
            out.frequencies_hz.push_back(trace.frequency(i));
        } else if (a < 0.0 && b > 0.0) {
            out.frequencies_hz.push_back(detail::bisect_zero(
                curve, trace.frequency(i), trace.frequency(i + 1), tolerance_hz));
        }
    }
    if (n >= 2 && curve.sample(n - 1) == 0.0 && !trace.pole_flag[n - 1]) {
        out.frequencies_hz.push_back(trace.frequency(n - 1));
    }
    return out;
}

// Poles of Im Z, located as downward sign flips with divergence and refined on
// the zeros of 1/Im Z, which passes smoothly through the pole. On a lossless
// trace every downward flip is a pole (the reactance rises between poles), so
// the magnitude gate only has to reject noise around tiny values; weak-residue
// poles barely clear 1e3 Ohm on a 1 MHz grid.
inline ResonanceSet find_imZ_poles(const SpectrumTrace& trace, double tolerance_hz = 1e3,
                                   double divergence_ohm = 1e3) {
    if (trace.kind != TraceKind::Impedance) {
        throw GridError("find_imZ_poles needs an impedance trace");
    }
    const int n = static_cast<int>(trace.samples.size());
    if (n < 2) throw GridError("trace has fewer than 2 grid points");
    std::vector<double> inv(n);
    const auto im = detail::imag_samples(trace);
    for (int i = 0; i < n; ++i) {
        inv[i] = trace.pole_flag[i] ? 0.0 : (im[i] == 0.0 ? 0.0 : 1.0 / im[i]);
    }
    detail::SampledCurve curve(trace.grid, inv);
    ResonanceSet out;
    out.kind = ResonanceKind::ZPole;
    out.tolerance_hz = tolerance_hz;
    for (int i = 0; i + 1 < n; ++i) {
        const bool flagged = trace.pole_flag[i] != 0;
        const bool flips_down = im[i] > 0.0 && im[i + 1] < 0.0;
        const bool diverges = std::max(std::abs(im[i]), std::abs(im[i + 1])) > divergence_ohm;
        if (flagged) {
            out.frequencies_hz.push_back(trace.frequency(i));
        } else if (flips_down && diverges) {
            out.frequencies_hz.push_back(detail::bisect_zero(
                curve, trace.frequency(i), trace.frequency(i + 1), tolerance_hz));
        }
    }
    return out;
}

// Local maxima of a dB-magnitude scattering trace above a prominence
// threshold, refined by parabolic interpolation. A flat trace yields an
// empty set, not an error.
inline ResonanceSet find_transmission_peaks(const SpectrumTrace& trace,
                                            double prominence_db = 3.0) {
    if (trace.kind != TraceKind::Scattering) {
        throw GridError("find_transmission_peaks needs a scattering trace");
    }
    const int n = static_cast<int>(trace.samples.size());
    if (n < 2) throw GridError("trace has fewer than 2 grid points");
    std::vector<double> db(n);
    for (int i = 0; i < n; ++i) db[i] = to_db(trace.samples[i]);
    ResonanceSet out;
    out.kind = ResonanceKind::SPeak;
    out.tolerance_hz = trace.grid.step_hz;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(db[i] > db[i - 1] && db[i] >= db[i + 1])) continue;
        // prominence: drop to the higher of the two flanking valleys
        double left = db[i];
        for (int j = i - 1; j >= 0 && db[j] < db[j + 1]; --j) left = db[j];
        double right = db[i];
        for (int j = i + 1; j < n && db[j] < db[j - 1]; ++j) right = db[j];
        if (db[i] - std::max(left, right) < prominence_db) continue;
        const double denom = db[i - 1] - 2.0 * db[i] + db[i + 1];
        double shift = 0.0;
        if (denom < 0.0) shift = 0.5 * (db[i - 1] - db[i + 1]) / denom;
        out.frequencies_hz.push_back(trace.frequency(i) + shift * trace.grid.step_hz);
    }
    return out;
}

}  // namespace cavitychain
