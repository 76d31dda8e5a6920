#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cavitychain/errors.hpp"

namespace cavitychain {

// gamma(d) = alpha d^4 with the exponent fixed; alpha in Hz per mm^4.
struct CouplerLaw {
    double alpha_hz_per_mm4 = 0.0;
    double residual_rms_hz = 0.0;
    std::string source = "user";  // h1 | h2 | user
};

struct CouplerPoint {
    double d_mm;
    double gamma_hz;
};

// Zero-intercept least squares of gamma on d^4. A single point is an exact
// ratio; several points at one diameter cannot constrain the law.
inline CouplerLaw fit_alpha(const std::vector<CouplerPoint>& points,
                            const std::string& source = "user") {
    if (points.empty()) throw DegenerateFitError("no points to fit");
    for (const auto& p : points) {
        if (!(p.d_mm > 0.0)) throw DegenerateFitError("diameters must be positive");
    }
    if (points.size() >= 2) {
        bool all_equal = true;
        for (const auto& p : points) {
            if (p.d_mm != points.front().d_mm) {
                all_equal = false;
                break;
            }
        }
        if (all_equal) {
            throw DegenerateFitError("all diameters equal; power law unconstrained");
        }
    }
    double num = 0.0, den = 0.0;
    for (const auto& p : points) {
        const double d4 = p.d_mm * p.d_mm * p.d_mm * p.d_mm;
        num += p.gamma_hz * d4;
        den += d4 * d4;
    }
    CouplerLaw law;
    law.alpha_hz_per_mm4 = num / den;
    law.source = source;
    double ss = 0.0;
    for (const auto& p : points) {
        const double d4 = p.d_mm * p.d_mm * p.d_mm * p.d_mm;
        const double r = p.gamma_hz - law.alpha_hz_per_mm4 * d4;
        ss += r * r;
    }
    law.residual_rms_hz = std::sqrt(ss / points.size());
    return law;
}

inline double gamma_of_d(const CouplerLaw& law, double d_mm) {
    if (d_mm < 0.0) throw DegenerateFitError("diameter must be nonnegative");
    return law.alpha_hz_per_mm4 * d_mm * d_mm * d_mm * d_mm;
}

struct PowerLawFit {
    double coefficient_hz;  // at d = 1 mm
    double exponent;
};

// Diagnostic free-exponent fit (log-log regression): the fixed-exponent law
// above is asserted, not derived, so this reports what the data itself says.
inline PowerLawFit fit_power_law(const std::vector<CouplerPoint>& points) {
    if (points.size() < 2) throw DegenerateFitError("free-exponent fit needs >= 2 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        if (!(p.d_mm > 0.0) || !(p.gamma_hz > 0.0)) {
            throw DegenerateFitError("free-exponent fit needs positive d and gamma");
        }
        const double x = std::log(p.d_mm);
        const double y = std::log(p.gamma_hz);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw DegenerateFitError("all diameters equal");
    PowerLawFit fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    fit.coefficient_hz = std::exp((sy - fit.exponent * sx) / n);
    return fit;
}

}  // namespace cavitychain
