#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cavitychain/branches.hpp"
#include "cavitychain/closed_form.hpp"
#include "cavitychain/constants.hpp"
#include "cavitychain/errors.hpp"

namespace cavitychain {

struct TwoLevelFitOptions {
    std::optional<double> fixed_omega_hz;    // fit omega unless supplied
    std::optional<double> fixed_c_sigma_f;   // fit c_sigma unless supplied
    int max_iterations = 300;
    double step_tol = 1e-13;
};

struct TwoLevelFitResult {
    double g_hz = 0.0;
    double omega_hz = 0.0;
    double c_sigma_f = 0.0;
    double rms_hz = 0.0;
    int iterations = 0;
};

// Least-squares fit of both avoided-crossing branches to the two-level
// eigenvalues, with the qubit frequency tied to the junction inductance by
// the LC resonance formula q = 1/(2 pi sqrt(c_sigma L_J)). Plain
// Levenberg-Marquardt with a numeric Jacobian; the initial guess is the
// gap midpoint for omega, a quarter of the minimum gap for g, and c_sigma
// from the most detuned sweep point.
inline TwoLevelFitResult fit_two_level(const AvoidedCrossing& ac,
                                       const TwoLevelFitOptions& options = {}) {
    std::vector<double> lj, lo, hi;
    for (size_t i = 0; i < ac.sweep_values.size(); ++i) {
        if (ac.branch_low[i] && ac.branch_high[i]) {
            lj.push_back(ac.sweep_values[i]);
            lo.push_back(*ac.branch_low[i]);
            hi.push_back(*ac.branch_high[i]);
        }
    }
    if (lj.size() < 3) {
        throw InsufficientDataError("two-level fit needs >= 3 two-branch points");
    }

    size_t imin = 0, imax = 0;
    for (size_t i = 1; i < lj.size(); ++i) {
        if (hi[i] - lo[i] < hi[imin] - lo[imin]) imin = i;
        if (hi[i] - lo[i] > hi[imax] - lo[imax]) imax = i;
    }

    const double g0 = 0.25 * (hi[imin] - lo[imin]);
    const double omega0 = options.fixed_omega_hz
                              ? *options.fixed_omega_hz
                              : 0.5 * (hi[imin] + lo[imin]);
    double csig0;
    if (options.fixed_c_sigma_f) {
        csig0 = *options.fixed_c_sigma_f;
    } else {
        // at the most detuned point the branch away from omega0 is the qubit
        const double q_far = std::abs(hi[imax] - omega0) > std::abs(lo[imax] - omega0)
                                 ? hi[imax]
                                 : lo[imax];
        const double w = 2.0 * k_pi * q_far;
        csig0 = 1.0 / (w * w * lj[imax]);
    }

    const bool fit_omega = !options.fixed_omega_hz.has_value();
    const bool fit_csig = !options.fixed_c_sigma_f.has_value();
    const int np = 1 + (fit_omega ? 1 : 0) + (fit_csig ? 1 : 0);
    Eigen::VectorXd theta(np);
    {
        int k = 0;
        theta(k++) = g0 > 0.0 ? g0 : 1e3;
        if (fit_omega) theta(k++) = omega0;
        if (fit_csig) theta(k++) = csig0;
    }

    const int m = static_cast<int>(lj.size()) * 2;
    auto residuals = [&](const Eigen::VectorXd& th, Eigen::VectorXd& r) {
        int k = 0;
        const double g = th(k++);
        const double omega = fit_omega ? th(k++) : *options.fixed_omega_hz;
        const double csig = fit_csig ? th(k++) : *options.fixed_c_sigma_f;
        if (!(csig > 0.0)) return false;
        for (size_t i = 0; i < lj.size(); ++i) {
            const double q = 1.0 / (2.0 * k_pi * std::sqrt(csig * lj[i]));
            const TwoLevelModes tm = two_level_modes(omega, q, g);
            r(2 * i) = tm.lower_hz - lo[i];
            r(2 * i + 1) = tm.upper_hz - hi[i];
        }
        return true;
    };

    Eigen::VectorXd r(m), r_try(m);
    if (!residuals(theta, r)) throw FitError("invalid initial guess");
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        Eigen::MatrixXd jac(m, np);
        for (int p = 0; p < np; ++p) {
            const double h = std::max(std::abs(theta(p)) * 1e-7, 1e-30);
            Eigen::VectorXd tp = theta, tm_ = theta;
            tp(p) += h;
            tm_(p) -= h;
            Eigen::VectorXd rp(m), rm(m);
            if (!residuals(tp, rp) || !residuals(tm_, rm)) {
                throw FitError("residual evaluation failed during Jacobian");
            }
            jac.col(p) = (rp - rm) / (2.0 * h);
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * r;
        bool stepped = false;
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
            const Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
            const Eigen::VectorXd theta_try = theta + delta;
            if (residuals(theta_try, r_try)) {
                const double cost_try = r_try.squaredNorm();
                if (cost_try < cost) {
                    const double rel_step = delta.cwiseAbs().maxCoeff() /
                                            theta.cwiseAbs().maxCoeff();
                    theta = theta_try;
                    r = r_try;
                    cost = cost_try;
                    lambda = std::max(lambda * 0.3, 1e-14);
                    stepped = true;
                    if (rel_step < options.step_tol) iter = options.max_iterations;
                    break;
                }
            }
            lambda *= 10.0;
            if (lambda > 1e14) break;
        }
        if (!stepped) break;
    }

    TwoLevelFitResult out;
    int k = 0;
    out.g_hz = std::abs(theta(k++));
    out.omega_hz = fit_omega ? theta(k++) : *options.fixed_omega_hz;
    out.c_sigma_f = fit_csig ? theta(k++) : *options.fixed_c_sigma_f;
    out.rms_hz = std::sqrt(cost / m);
    out.iterations = iter;
    if (!std::isfinite(out.rms_hz) || !std::isfinite(out.g_hz)) {
        throw FitError("two-level fit did not converge (rms " +
                       std::to_string(out.rms_hz) + " Hz)");
    }
    return out;
}

}  // namespace cavitychain
