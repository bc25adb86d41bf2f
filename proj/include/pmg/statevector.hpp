#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pmg/circuit.hpp"

namespace pmg {

// In-place dense gate application; qubit q addresses bit q of the basis
// index. For multi-qubit gates, qubits[i] is bit i of the gate's local
// basis index.
void apply_single_qubit(Eigen::VectorXcd& state, int qubit, const Eigen::Matrix2cd& gate);
void apply_block(Eigen::VectorXcd& state, const std::vector<int>& qubits,
                 const Eigen::MatrixXcd& gate);

// |BPM_n> on 2n-1 qubits: edge register uniform, vertex register the
// GHZ-with-pathsum-X-errors superposition.
Eigen::VectorXcd bpm_state(int n);

// Executes a gate list from |0...0> and returns Born probabilities.
// "bpm_prep" is interpreted as direct preparation and must come first.
Eigen::VectorXd born_distribution(const CircuitDescriptor& circ);
Eigen::VectorXd born_distribution(const NativeCircuit& circ);

}  // namespace pmg
