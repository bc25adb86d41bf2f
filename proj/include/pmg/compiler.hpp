#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pmg/circuit.hpp"

namespace pmg {

// Unitary acting on the coordinate pair (i, j), i < j, as the 2x2 block u.
struct TwoLevelFactor {
    int i = 0;
    int j = 0;
    Eigen::Matrix2cd u;
};

// Scalar phase on a single coordinate.
struct PhaseFactor {
    int index = 0;
    std::complex<double> phase{1.0, 0.0};
};

// U = rotations[0] * rotations[1] * ... * rotations.back() * diag(phases),
// phases defaulting to 1 on unlisted coordinates.
struct TwoLevelDecomposition {
    Eigen::Index dim = 0;
    std::vector<TwoLevelFactor> rotations;
    std::vector<PhaseFactor> phases;
};

// Column-major Givens sweep; factor count is at most dim(dim-1)/2 rotations
// plus dim phase factors, and the trailing 2x2 corner is emitted as a single
// factor (so a 2x2 unitary decomposes into exactly one). Input must be
// unitary within 1e-10. Deterministic.
TwoLevelDecomposition two_level_decompose(const Eigen::MatrixXcd& u);

// Multiplies the factors back together (validation path).
Eigen::MatrixXcd two_level_product(const TwoLevelDecomposition& decomposition);

// Lowers two-level factors to CNOT + single-qubit gates over m qubits via
// Gray-code chains and ancilla-free multi-controlled expansions.
NativeCircuit lower_to_native(const TwoLevelDecomposition& decomposition, int m);

// decompose + lower in one step for a 2^m x 2^m unitary.
NativeCircuit compile_block_unitary(const Eigen::MatrixXcd& u, int m);

// Lowers a full descriptor: native gates pass through, the cyclic-shift
// permutations become SWAP chains, block unitaries (<= 6 qubits) go through
// the two-level path, and the opaque bpm_prep block is expanded into an
// explicit Hadamard/CNOT preparation ladder (distribution-faithful; no
// constant-depth claim).
NativeCircuit compile_descriptor(const CircuitDescriptor& circ);

}  // namespace pmg
