#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cavitychain/constants.hpp"
#include "cavitychain/errors.hpp"

namespace cavitychain {

enum class ElementKind { Capacitor, Inductor, Resistor };

// Two-terminal element between node indices; kGroundNode marks ground.
inline constexpr int kGroundNode = -1;

struct Element {
    ElementKind kind;
    double value;  // F, H or Ohm
    int node_a;
    int node_b;
};

enum class PortRole { QubitLumped, Drive, Readout };

struct Port {
    std::string name;
    PortRole role;
    int node;  // the port's terminal node (against ground)
};

// Lumped LC(+R) node graph standing in for a driven field simulation of the
// cavity array. Ground is implicit; every node must reach it through
// elements and all values must be positive.
struct CircuitNetwork {
    int node_count = 0;
    std::vector<Element> elements;
    std::vector<Port> ports;

    int add_node() { return node_count++; }

    void add(ElementKind kind, double value, int a, int b) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw NetworkError("element value must be positive and finite, got " +
                               std::to_string(value));
        }
        if (a < kGroundNode || a >= node_count || b < kGroundNode || b >= node_count ||
            a == b) {
            throw NetworkError("bad element node pair (" + std::to_string(a) + ", " +
                               std::to_string(b) + ")");
        }
        elements.push_back({kind, value, a, b});
    }

    const Port& port(const std::string& name) const {
        for (const auto& p : ports) {
            if (p.name == name) return p;
        }
        throw PortError("no port named '" + name + "'");
    }

    bool all_nodes_grounded() const {
        // Union-find over {ground} + nodes through element connectivity.
        std::vector<int> parent(node_count + 1);
        for (int i = 0; i <= node_count; ++i) parent[i] = i;
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& e : elements) {
            const int a = find(e.node_a + 1);
            const int b = find(e.node_b + 1);
            if (a != b) parent[a] = b;
        }
        const int g = find(0);
        for (int i = 0; i < node_count; ++i) {
            if (find(i + 1) != g) return false;
        }
        return true;
    }
};

// Complex node-admittance matrix at one frequency. Capacitors stamp i*2*pi*f*C,
// inductors 1/(i*2*pi*f*L), resistors 1/R; the result is complex-symmetric.
inline Eigen::MatrixXcd nodal_matrix(const CircuitNetwork& net, double f_hz,
                                     bool include_resistors = true) {
    if (!(f_hz > 0.0)) throw NetworkError("nodal matrix needs f > 0");
    const double w = 2.0 * k_pi * f_hz;
    const std::complex<double> j(0.0, 1.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(net.node_count, net.node_count);
    auto stamp = [&](int a, int b, std::complex<double> y) {
        if (a >= 0) m(a, a) += y;
        if (b >= 0) m(b, b) += y;
        if (a >= 0 && b >= 0) {
            m(a, b) -= y;
            m(b, a) -= y;
        }
    };
    for (const auto& e : net.elements) {
        switch (e.kind) {
            case ElementKind::Capacitor:
                stamp(e.node_a, e.node_b, j * w * e.value);
                break;
            case ElementKind::Inductor:
                stamp(e.node_a, e.node_b, 1.0 / (j * w * e.value));
                break;
            case ElementKind::Resistor:
                if (include_resistors) stamp(e.node_a, e.node_b, 1.0 / e.value);
                break;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Chain description: the cavity-array surrogate in component values.

struct QubitSpec {
    int host_cavity = 0;     // 0-based
    double c_g = 0.0;        // coupling capacitor to the host tank, F
    double c_a = 0.0;        // antenna shunt capacitor, F
    double c_j = 10e-15;     // junction capacitance, F
    double l_j = 8e-9;       // junction inductance, H
    std::string port_name;   // qubit lumped port, across the L_J branch
};

struct MeasurementPortSpec {
    int cavity = 0;
    double c_p = 0.0;        // series port capacitor, F
    double r = 50.0;         // termination resistor, Ohm
    PortRole role = PortRole::Drive;
    std::string name;
};

struct ChainSpec {
    int cavities = 1;
    double tank_l = 0.0;     // H, per cavity
    double tank_c = 0.0;     // F, per cavity
    double coupling_c = 0.0; // F, between adjacent tanks (0 allowed for n=1)
    std::vector<QubitSpec> qubits;
    std::vector<MeasurementPortSpec> measurement_ports;
    // Trim each hosting tank by its qubit branch's static shunt so all
    // cavities keep the same intrinsic frequency, the uniform-chain premise
    // of the frequency models (equal loading across cavities).
    bool equalize_qubit_loading = true;
};

struct BuiltCircuit {
    CircuitNetwork net;
    std::vector<int> tank_nodes;
    std::vector<int> qubit_nodes;
};

// Tanks are parallel LC to ground; adjacent tanks couple through coupling_c;
// each qubit is a (c_J || L_J || C_a) branch tied to its host tank through
// c_g, with the lumped port across the L_J branch; measurement ports are a
// series port capacitor into the termination resistor on the named tank.
inline BuiltCircuit build_cavity_circuit(const ChainSpec& spec) {
    if (spec.cavities < 1) throw NetworkError("need at least one cavity");
    if (!(spec.tank_l > 0.0) || !(spec.tank_c > 0.0)) {
        throw NetworkError("tank L and C must be positive");
    }
    if (spec.cavities > 1 && !(spec.coupling_c > 0.0)) {
        throw NetworkError("coupled chain needs a positive coupling capacitor");
    }
    BuiltCircuit out;
    CircuitNetwork& net = out.net;
    for (int i = 0; i < spec.cavities; ++i) {
        out.tank_nodes.push_back(net.add_node());
    }
    std::vector<double> tank_c(spec.cavities, spec.tank_c);
    if (spec.equalize_qubit_loading) {
        for (const auto& q : spec.qubits) {
            if (q.host_cavity < 0 || q.host_cavity >= spec.cavities) continue;
            const double branch = q.c_a + q.c_j;
            const double shunt = q.c_g * branch / (q.c_g + branch);
            tank_c[q.host_cavity] -= shunt;
            if (!(tank_c[q.host_cavity] > 0.0)) {
                throw NetworkError("qubit loading compensation exceeds the tank capacitance");
            }
        }
    }
    for (int i = 0; i < spec.cavities; ++i) {
        net.add(ElementKind::Inductor, spec.tank_l, out.tank_nodes[i], kGroundNode);
        net.add(ElementKind::Capacitor, tank_c[i], out.tank_nodes[i], kGroundNode);
    }
    for (int i = 0; i + 1 < spec.cavities; ++i) {
        net.add(ElementKind::Capacitor, spec.coupling_c, out.tank_nodes[i],
                out.tank_nodes[i + 1]);
    }
    for (const auto& q : spec.qubits) {
        if (q.host_cavity < 0 || q.host_cavity >= spec.cavities) {
            throw NetworkError("qubit host cavity out of range: " +
                               std::to_string(q.host_cavity));
        }
        const int qn = net.add_node();
        out.qubit_nodes.push_back(qn);
        net.add(ElementKind::Capacitor, q.c_g, out.tank_nodes[q.host_cavity], qn);
        net.add(ElementKind::Capacitor, q.c_a, qn, kGroundNode);
        net.add(ElementKind::Capacitor, q.c_j, qn, kGroundNode);
        net.add(ElementKind::Inductor, q.l_j, qn, kGroundNode);
        net.ports.push_back(
            {q.port_name.empty() ? "lp" + std::to_string(out.qubit_nodes.size())
                                 : q.port_name,
             PortRole::QubitLumped, qn});
    }
    for (const auto& mp : spec.measurement_ports) {
        if (mp.cavity < 0 || mp.cavity >= spec.cavities) {
            throw NetworkError("port cavity out of range: " + std::to_string(mp.cavity));
        }
        const int pn = net.add_node();
        net.add(ElementKind::Capacitor, mp.c_p, out.tank_nodes[mp.cavity], pn);
        net.add(ElementKind::Resistor, mp.r, pn, kGroundNode);
        net.ports.push_back(
            {mp.name.empty() ? "port" + std::to_string(net.ports.size() + 1) : mp.name,
             mp.role, pn});
    }
    if (!net.all_nodes_grounded()) {
        throw NetworkError("circuit has nodes unreachable from ground");
    }
    return out;
}

}  // namespace cavitychain
