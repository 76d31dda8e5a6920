#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "cavitychain/errors.hpp"

namespace cavitychain {

// Real symmetric frequency matrix (entries in Hz). Chains are tridiagonal:
// intrinsic mode frequencies on the diagonal, nearest-neighbour couplings on
// the off-diagonals. Qubits attach as extra rows coupled only to their host.
struct ModeMatrix {
    Eigen::MatrixXd entries;

    int dim() const { return static_cast<int>(entries.rows()); }

    bool is_symmetric(double tol = 0.0) const {
        return (entries - entries.transpose()).cwiseAbs().maxCoeff() <= tol;
    }
};

struct EigenSolution {
    Eigen::VectorXd frequencies;  // ascending, Hz
    Eigen::MatrixXd vectors;      // orthonormal columns, matching order
};

inline ModeMatrix build_chain_matrix(const std::vector<double>& intrinsic_hz,
                                     const std::vector<double>& couplings_hz) {
    if (intrinsic_hz.size() < 2) {
        throw DimensionError("chain needs at least 2 cavities, got " +
                             std::to_string(intrinsic_hz.size()));
    }
    if (couplings_hz.size() + 1 != intrinsic_hz.size()) {
        throw DimensionError("couplings length must be cavities-1: " +
                             std::to_string(couplings_hz.size()) + " vs " +
                             std::to_string(intrinsic_hz.size()));
    }
    const int n = static_cast<int>(intrinsic_hz.size());
    ModeMatrix m;
    m.entries = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m.entries(i, i) = intrinsic_hz[i];
    for (int i = 0; i + 1 < n; ++i) {
        m.entries(i, i + 1) = couplings_hz[i];
        m.entries(i + 1, i) = couplings_hz[i];
    }
    return m;
}

struct QubitAttachment {
    int host_cavity = 0;   // 0-based index into the chain
    double q_hz = 0.0;     // qubit frequency
    double g_hz = 0.0;     // qubit-cavity coupling
};

// Chain block first, then one row/column per qubit coupled to its host only.
// Hosts (0,1) give the nearest-neighbour matrix, hosts (0,2) the
// next-nearest-neighbour one; a single cavity with one qubit gives the
// two-level matrix.
inline ModeMatrix build_qubit_chain_matrix(const ModeMatrix& chain,
                                           const std::vector<QubitAttachment>& qubits) {
    if (!chain.is_symmetric()) {
        throw DimensionError("chain matrix must be symmetric");
    }
    const int nc = chain.dim();
    const int nq = static_cast<int>(qubits.size());
    for (int k = 0; k < nq; ++k) {
        if (qubits[k].host_cavity < 0 || qubits[k].host_cavity >= nc) {
            throw DimensionError("qubit host cavity out of range: " +
                                 std::to_string(qubits[k].host_cavity));
        }
        for (int j = 0; j < k; ++j) {
            if (qubits[j].host_cavity == qubits[k].host_cavity) {
                throw DimensionError("duplicate qubit host cavity " +
                                     std::to_string(qubits[k].host_cavity));
            }
        }
    }
    ModeMatrix m;
    m.entries = Eigen::MatrixXd::Zero(nc + nq, nc + nq);
    m.entries.topLeftCorner(nc, nc) = chain.entries;
    for (int k = 0; k < nq; ++k) {
        const int row = nc + k;
        m.entries(row, row) = qubits[k].q_hz;
        m.entries(row, qubits[k].host_cavity) = qubits[k].g_hz;
        m.entries(qubits[k].host_cavity, row) = qubits[k].g_hz;
    }
    return m;
}

// Ascending eigenfrequencies with orthonormal vectors. Vector sign is fixed
// by making the largest-magnitude component positive, so reported mode
// patterns are reproducible.
inline EigenSolution eigenmodes(const ModeMatrix& m) {
    const double scale = m.entries.cwiseAbs().maxCoeff();
    if (!m.is_symmetric(1e-12 * std::max(scale, 1.0))) {
        throw DimensionError("eigenmodes requires a symmetric matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries);
    if (solver.info() != Eigen::Success) {
        throw Error("symmetric eigensolve failed");
    }
    EigenSolution s;
    s.frequencies = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
    for (int k = 0; k < s.vectors.cols(); ++k) {
        int imax = 0;
        s.vectors.col(k).cwiseAbs().maxCoeff(&imax);
        if (s.vectors(imax, k) < 0) s.vectors.col(k) = -s.vectors.col(k);
    }
    return s;
}

// |eigenvector component| of one mode at one node; the middle mode of a
// symmetric 3-chain returns 0 at the centre node (the dark-state pattern).
inline double dark_mode_participation(const EigenSolution& s, int mode_index,
                                      int node_index) {
    if (mode_index < 0 || mode_index >= s.vectors.cols() || node_index < 0 ||
        node_index >= s.vectors.rows()) {
        throw DimensionError("participation index out of range");
    }
    return std::abs(s.vectors(node_index, mode_index));
}

}  // namespace cavitychain
