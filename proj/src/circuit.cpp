#include "pmg/circuit.hpp"

#include <stdexcept>

namespace pmg {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("matrix json must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::invalid_argument("matrix json rows have uneven lengths");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& entry = row.at(static_cast<std::size_t>(c));
            m(r, c) = {entry.at(0).get<double>(), entry.at(1).get<double>()};
        }
    }
    return m;
}

json descriptor_to_json(const CircuitDescriptor& circ) {
    json gates = json::array();
    for (const auto& gate : circ.gates) {
        json g;
        g["name"] = gate.name;
        g["qubits"] = gate.qubits;
        if (gate.theta.has_value()) {
            g["theta"] = *gate.theta;
        }
        if (gate.matrix.has_value()) {
            g["matrix"] = matrix_to_json(*gate.matrix);
        }
        if (gate.layer != 0) {
            g["layer"] = gate.layer;
        }
        gates.push_back(std::move(g));
    }
    return json{{"qubits", circ.qubits}, {"gates", std::move(gates)}};
}

CircuitDescriptor descriptor_from_json(const json& j) {
    CircuitDescriptor circ;
    circ.qubits = j.at("qubits").get<int>();
    for (const auto& g : j.at("gates")) {
        GateOp gate;
        gate.name = g.at("name").get<std::string>();
        gate.qubits = g.at("qubits").get<std::vector<int>>();
        if (g.contains("theta")) {
            gate.theta = g.at("theta").get<double>();
        }
        if (g.contains("matrix")) {
            gate.matrix = matrix_from_json(g.at("matrix"));
        }
        if (g.contains("layer")) {
            gate.layer = g.at("layer").get<int>();
        }
        for (int q : gate.qubits) {
            if (q < 0 || q >= circ.qubits) {
                throw std::invalid_argument("gate qubit index out of range");
            }
        }
        circ.gates.push_back(std::move(gate));
    }
    return circ;
}

json native_to_json(const NativeCircuit& circ) {
    json gates = json::array();
    for (const auto& gate : circ.gates) {
        json g;
        g["name"] = gate.name;
        g["qubits"] = gate.qubits;
        if (gate.name == "u1q") {
            g["matrix"] = matrix_to_json(gate.matrix);
        }
        gates.push_back(std::move(g));
    }
    return json{{"qubits", circ.qubits}, {"gates", std::move(gates)}};
}

NativeCircuit native_from_json(const json& j) {
    NativeCircuit circ;
    circ.qubits = j.at("qubits").get<int>();
    for (const auto& g : j.at("gates")) {
        NativeGate gate;
        gate.name = g.at("name").get<std::string>();
        gate.qubits = g.at("qubits").get<std::vector<int>>();
        if (gate.name == "u1q") {
            gate.matrix = matrix_from_json(g.at("matrix"));
        } else if (gate.name != "cnot") {
            throw std::invalid_argument("native circuits admit only u1q and cnot gates");
        }
        circ.gates.push_back(std::move(gate));
    }
    return circ;
}

}  // namespace pmg
