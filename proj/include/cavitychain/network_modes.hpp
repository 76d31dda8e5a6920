#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "cavitychain/circuit.hpp"
#include "cavitychain/constants.hpp"
#include "cavitychain/errors.hpp"

namespace cavitychain {

// Lossless eigenfrequencies from the generalized symmetric problem
// Gamma v = (2 pi f)^2 C v, where C is the node capacitance matrix and Gamma
// the node inverse-inductance matrix. Resistors are ignored. Nodes without an
// inductive path (e.g. behind a port capacitor) contribute zero eigenvalues,
// which are dropped; only positive roots are returned, ascending.
inline std::vector<double> network_eigenfrequencies(const CircuitNetwork& net,
                                                    double f_min_hz = 1e3) {
    const int n = net.node_count;
    Eigen::MatrixXd cap = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd gam = Eigen::MatrixXd::Zero(n, n);
    auto stamp = [](Eigen::MatrixXd& m, int a, int b, double y) {
        if (a >= 0) m(a, a) += y;
        if (b >= 0) m(b, b) += y;
        if (a >= 0 && b >= 0) {
            m(a, b) -= y;
            m(b, a) -= y;
        }
    };
    for (const auto& e : net.elements) {
        if (e.kind == ElementKind::Capacitor) {
            stamp(cap, e.node_a, e.node_b, e.value);
        } else if (e.kind == ElementKind::Inductor) {
            stamp(gam, e.node_a, e.node_b, 1.0 / e.value);
        }
    }
    // drop nodes that no element touches (e.g. after editing surgery)
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        if (cap.row(i).cwiseAbs().sum() > 0.0 || gam.row(i).cwiseAbs().sum() > 0.0) {
            keep.push_back(i);
        }
    }
    if (keep.empty()) return {};
    if (static_cast<int>(keep.size()) < n) {
        Eigen::MatrixXd cap2(keep.size(), keep.size()), gam2(keep.size(), keep.size());
        for (size_t i = 0; i < keep.size(); ++i) {
            for (size_t j = 0; j < keep.size(); ++j) {
                cap2(i, j) = cap(keep[i], keep[j]);
                gam2(i, j) = gam(keep[i], keep[j]);
            }
        }
        cap = std::move(cap2);
        gam = std::move(gam2);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cap);
    if (llt.info() != Eigen::Success) {
        throw NetworkError("node capacitance matrix is not positive definite");
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(gam, cap);
    if (solver.info() != Eigen::Success) {
        throw NetworkError("generalized eigensolve failed");
    }
    std::vector<double> out;
    const double lam_min = (2.0 * k_pi * f_min_hz) * (2.0 * k_pi * f_min_hz);
    for (int k = 0; k < solver.eigenvalues().size(); ++k) {
        const double lam = solver.eigenvalues()(k);
        if (lam > lam_min) out.push_back(std::sqrt(lam) / (2.0 * k_pi));
    }
    return out;  // ascending (solver returns ascending eigenvalues)
}

}  // namespace cavitychain
