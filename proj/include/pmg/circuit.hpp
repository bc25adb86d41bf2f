#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace pmg {

// Gate vocabulary used by CircuitDescriptor:
//   "bpm_prep"   opaque preparation of the binary-tree poor man's GHZ state
//                on all qubits (must be the first gate, from |0...0>)
//   "h"          Hadamard on one qubit
//   "u_dag"      adjoint of the block gate U_{m,theta}; m = qubit count
//   "cshift_inv" inverse cyclic shift (adjoint of the left label-rotation)
//   "xrot"       exp(i theta X) on one qubit
//   "u1q"        explicit 2x2 unitary (native)
//   "cnot"       controlled-not, qubits = {control, target} (native)
struct GateOp {
    std::string name;
    std::vector<int> qubits;
    std::optional<double> theta;
    std::optional<Eigen::MatrixXcd> matrix;
    int layer = 0;
};

struct CircuitDescriptor {
    int qubits = 0;
    std::vector<GateOp> gates;
};

struct NativeGate {
    std::string name;  // "u1q" or "cnot"
    std::vector<int> qubits;
    Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();  // u1q only
};

struct NativeCircuit {
    int qubits = 0;
    std::vector<NativeGate> gates;
};

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

nlohmann::json descriptor_to_json(const CircuitDescriptor& circ);
CircuitDescriptor descriptor_from_json(const nlohmann::json& j);

nlohmann::json native_to_json(const NativeCircuit& circ);
NativeCircuit native_from_json(const nlohmann::json& j);

// Dense unitary composed from a native gate list (dimension 2^qubits).
Eigen::MatrixXcd native_unitary(const NativeCircuit& circ);

}  // namespace pmg
