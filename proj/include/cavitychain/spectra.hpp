#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "cavitychain/circuit.hpp"
#include "cavitychain/errors.hpp"
#include "cavitychain/threading.hpp"

namespace cavitychain {

struct SweepGrid {
    double start_hz = 0.0;
    double stop_hz = 0.0;
    double step_hz = 0.0;

    int points() const {
        if (!(start_hz < stop_hz) || !(step_hz > 0.0)) {
            throw GridError("sweep grid needs start < stop and step > 0");
        }
        const int n = static_cast<int>(std::floor((stop_hz - start_hz) / step_hz)) + 1;
        if (n < 3) throw GridError("sweep grid needs at least 3 points");
        return n;
    }

    double at(int i) const { return start_hz + i * step_hz; }
};

enum class TraceKind { Admittance, Impedance, Scattering };

struct SpectrumTrace {
    TraceKind kind = TraceKind::Admittance;
    std::string port_in;
    std::string port_out;  // equals port_in for driving-point traces
    SweepGrid grid;
    std::vector<std::complex<double>> samples;  // S (unitless), Ohm, or Siemens
    bool lossless = true;
    std::vector<char> pole_flag;  // set where the nodal solve was singular

    double frequency(int i) const { return grid.at(i); }
};

namespace detail {

// Driving-point impedance at one node: unit current injection into the nodal
// solve. Singular systems (exactly on a lossless pole) are flagged, not fatal.
inline std::complex<double> driving_point_z(const CircuitNetwork& net, int node,
                                            double f_hz, bool* singular) {
    Eigen::MatrixXcd y = nodal_matrix(net, f_hz);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(y);
    if (!lu.isInvertible()) {
        if (singular) *singular = true;
        return {0.0, 0.0};
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(net.node_count);
    rhs(node) = 1.0;
    const Eigen::VectorXcd v = lu.solve(rhs);
    if (singular) *singular = false;
    return v(node);
}

inline bool network_is_lossless(const CircuitNetwork& net) {
    for (const auto& e : net.elements) {
        if (e.kind == ElementKind::Resistor) return false;
    }
    return true;
}

}  // namespace detail

inline SpectrumTrace port_impedance_spectrum(const CircuitNetwork& net,
                                             const std::string& port_name,
                                             const SweepGrid& grid, int threads = 1) {
    const Port& p = net.port(port_name);
    const int n = grid.points();
    SpectrumTrace t;
    t.kind = TraceKind::Impedance;
    t.port_in = t.port_out = port_name;
    t.grid = grid;
    t.samples.resize(n);
    t.pole_flag.assign(n, 0);
    t.lossless = detail::network_is_lossless(net);
    parallel_for(n, threads, [&](int i) {
        bool singular = false;
        t.samples[i] = detail::driving_point_z(net, p.node, grid.at(i), &singular);
        if (singular) t.pole_flag[i] = 1;
    });
    return t;
}

inline SpectrumTrace port_admittance_spectrum(const CircuitNetwork& net,
                                              const std::string& port_name,
                                              const SweepGrid& grid, int threads = 1) {
    SpectrumTrace t = port_impedance_spectrum(net, port_name, grid, threads);
    t.kind = TraceKind::Admittance;
    for (int i = 0; i < static_cast<int>(t.samples.size()); ++i) {
        if (t.pole_flag[i]) {
            t.samples[i] = {0.0, 0.0};  // Y = 0 exactly at a lossless Z pole
        } else {
            t.samples[i] = 1.0 / t.samples[i];
        }
    }
    return t;
}

// Scattering coefficient from the two-port open-circuit impedance matrix with
// a 50 Ohm reference: S = (Z/Z0 - I)(Z/Z0 + I)^-1. The port termination
// resistors embody the reference impedance and are removed for the Z solve.
inline SpectrumTrace transmission_spectrum(const CircuitNetwork& net,
                                           const std::string& port_in,
                                           const std::string& port_out,
                                           const SweepGrid& grid, int threads = 1,
                                           double z0 = 50.0) {
    const Port& pin = net.port(port_in);
    const Port& pout = net.port(port_out);
    auto terminated = [&](const Port& p) {
        for (const auto& e : net.elements) {
            if (e.kind == ElementKind::Resistor && (e.node_a == p.node || e.node_b == p.node)) {
                return true;
            }
        }
        return false;
    };
    if (!terminated(pin) || !terminated(pout)) {
        throw PortError("transmission needs resistive terminations on both ports");
    }
    CircuitNetwork open = net;
    open.elements.erase(
        std::remove_if(open.elements.begin(), open.elements.end(),
                       [&](const Element& e) {
                           return e.kind == ElementKind::Resistor &&
                                  (e.node_a == pin.node || e.node_b == pin.node ||
                                   e.node_a == pout.node || e.node_b == pout.node);
                       }),
        open.elements.end());

    const int n = grid.points();
    SpectrumTrace t;
    t.kind = TraceKind::Scattering;
    t.port_in = port_in;
    t.port_out = port_out;
    t.grid = grid;
    t.samples.resize(n);
    t.pole_flag.assign(n, 0);
    t.lossless = false;  // scattering against resistive reference
    parallel_for(n, threads, [&](int i) {
        Eigen::MatrixXcd y = nodal_matrix(open, grid.at(i));
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(y);
        if (!lu.isInvertible()) {
            t.pole_flag[i] = 1;
            t.samples[i] = {0.0, 0.0};
            return;
        }
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(open.node_count);
        Eigen::Matrix2cd z;
        rhs(pin.node) = 1.0;
        Eigen::VectorXcd v = lu.solve(rhs);
        z(0, 0) = v(pin.node);
        z(1, 0) = v(pout.node);
        rhs(pin.node) = 0.0;
        rhs(pout.node) = 1.0;
        v = lu.solve(rhs);
        z(0, 1) = v(pin.node);
        z(1, 1) = v(pout.node);
        const Eigen::Matrix2cd a = z / z0;
        const Eigen::Matrix2cd i2 = Eigen::Matrix2cd::Identity();
        const Eigen::Matrix2cd s = (a - i2) * (a + i2).inverse();
        t.samples[i] = s(1, 0);
    });
    return t;
}

inline double to_db(std::complex<double> s) {
    return 20.0 * std::log10(std::abs(s) + 1e-300);
}

}  // namespace cavitychain
