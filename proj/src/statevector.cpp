#include "pmg/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmg/gates.hpp"
#include "pmg/tree.hpp"

namespace pmg {

namespace {

constexpr int kMaxDenseQubits = 24;

Eigen::Matrix2cd hadamard() {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix2cd h;
    h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    return h;
}

Eigen::MatrixXcd cnot_matrix() {
    // Local basis: control at bit 0, target at bit 1.
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(4, 4);
    c(0, 0) = 1.0;
    c(3, 1) = 1.0;
    c(2, 2) = 1.0;
    c(1, 3) = 1.0;
    return c;
}

void check_qubits(int total, const std::vector<int>& qubits) {
    std::uint64_t seen = 0;
    for (int q : qubits) {
        if (q < 0 || q >= total) {
            throw std::invalid_argument("qubit index out of range");
        }
        if (seen & (std::uint64_t(1) << q)) {
            throw std::invalid_argument("duplicate qubit in gate");
        }
        seen |= std::uint64_t(1) << q;
    }
}

}  // namespace

void apply_single_qubit(Eigen::VectorXcd& state, int qubit, const Eigen::Matrix2cd& gate) {
    const std::uint64_t size = static_cast<std::uint64_t>(state.size());
    const std::uint64_t stride = std::uint64_t(1) << qubit;
    for (std::uint64_t base = 0; base < size; ++base) {
        if (base & stride) {
            continue;
        }
        const auto i0 = static_cast<Eigen::Index>(base);
        const auto i1 = static_cast<Eigen::Index>(base | stride);
        const std::complex<double> a0 = state(i0);
        const std::complex<double> a1 = state(i1);
        state(i0) = gate(0, 0) * a0 + gate(0, 1) * a1;
        state(i1) = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
}

void apply_block(Eigen::VectorXcd& state, const std::vector<int>& qubits,
                 const Eigen::MatrixXcd& gate) {
    const int k = static_cast<int>(qubits.size());
    const Eigen::Index local = Eigen::Index(1) << k;
    if (gate.rows() != local || gate.cols() != local) {
        throw std::invalid_argument("gate dimension does not match qubit count");
    }
    const std::uint64_t size = static_cast<std::uint64_t>(state.size());
    std::uint64_t mask = 0;
    std::vector<std::uint64_t> scatter(static_cast<std::size_t>(local), 0);
    for (int i = 0; i < k; ++i) {
        mask |= std::uint64_t(1) << qubits[static_cast<std::size_t>(i)];
    }
    for (Eigen::Index l = 0; l < local; ++l) {
        std::uint64_t offset = 0;
        for (int i = 0; i < k; ++i) {
            if ((l >> i) & 1) {
                offset |= std::uint64_t(1) << qubits[static_cast<std::size_t>(i)];
            }
        }
        scatter[static_cast<std::size_t>(l)] = offset;
    }

    Eigen::VectorXcd local_in(local);
    for (std::uint64_t base = 0; base < size; ++base) {
        if (base & mask) {
            continue;
        }
        for (Eigen::Index l = 0; l < local; ++l) {
            local_in(l) = state(static_cast<Eigen::Index>(base | scatter[static_cast<std::size_t>(l)]));
        }
        Eigen::VectorXcd local_out = gate * local_in;
        for (Eigen::Index l = 0; l < local; ++l) {
            state(static_cast<Eigen::Index>(base | scatter[static_cast<std::size_t>(l)])) = local_out(l);
        }
    }
}

Eigen::VectorXcd bpm_state(int n) {
    if (2 * n - 1 > kMaxDenseQubits) {
        throw std::invalid_argument("dense statevector capped at 24 qubits");
    }
    const BalancedTree tree = build_tree(n);
    const int edges = n - 1;
    const std::uint64_t d_count = std::uint64_t(1) << edges;
    const std::uint64_t vertex_mask = (std::uint64_t(1) << edges) - 1;
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(Eigen::Index(1) << (2 * n - 1));
    const double amp = std::ldexp(1.0, -(edges) / 2) *
                       ((edges % 2) ? 1.0 / std::numbers::sqrt2 : 1.0) / std::numbers::sqrt2;
    for (std::uint64_t d = 0; d < d_count; ++d) {
        const Bits dbits = bits_from_index(d, edges);
        const std::uint64_t h = index_from_bits(pathsum(tree, dbits));
        const std::uint64_t zero_branch = d | (h << edges);
        const std::uint64_t one_branch =
            d | ((h ^ vertex_mask) << edges) | (std::uint64_t(1) << (2 * n - 2));
        state(static_cast<Eigen::Index>(zero_branch)) = amp;
        state(static_cast<Eigen::Index>(one_branch)) = amp;
    }
    return state;
}

Eigen::VectorXd born_distribution(const CircuitDescriptor& circ) {
    if (circ.qubits > kMaxDenseQubits) {
        throw std::invalid_argument("dense statevector capped at 24 qubits");
    }
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(Eigen::Index(1) << circ.qubits);
    state(0) = 1.0;
    bool first = true;
    for (const auto& gate : circ.gates) {
        check_qubits(circ.qubits, gate.qubits);
        if (gate.name == "bpm_prep") {
            if (!first) {
                throw std::invalid_argument("bpm_prep must be the first gate");
            }
            if (static_cast<int>(gate.qubits.size()) != circ.qubits || circ.qubits % 2 == 0) {
                throw std::invalid_argument("bpm_prep must cover all 2n-1 qubits");
            }
            state = bpm_state((circ.qubits + 1) / 2);
        } else if (gate.name == "h") {
            apply_single_qubit(state, gate.qubits.at(0), hadamard());
        } else if (gate.name == "xrot") {
            apply_single_qubit(state, gate.qubits.at(0), x_rotation(gate.theta.value()));
        } else if (gate.name == "u_dag") {
            BlockGateParams block{static_cast<int>(gate.qubits.size()), gate.theta.value()};
            apply_block(state, gate.qubits, build_u(block).adjoint());
        } else if (gate.name == "cshift_inv") {
            apply_block(state, gate.qubits,
                        build_c(static_cast<int>(gate.qubits.size())).transpose());
        } else if (gate.name == "cnot") {
            apply_block(state, gate.qubits, cnot_matrix());
        } else if (gate.name == "u1q") {
            apply_single_qubit(state, gate.qubits.at(0), Eigen::Matrix2cd(gate.matrix.value()));
        } else if (gate.matrix.has_value()) {
            apply_block(state, gate.qubits, *gate.matrix);
        } else {
            throw std::invalid_argument("unknown gate without matrix: " + gate.name);
        }
        first = false;
    }
    return state.cwiseAbs2();
}

Eigen::MatrixXcd native_unitary(const NativeCircuit& circ) {
    if (circ.qubits > 12) {
        throw std::invalid_argument("native_unitary capped at 12 qubits");
    }
    const Eigen::Index dim = Eigen::Index(1) << circ.qubits;
    Eigen::MatrixXcd u(dim, dim);
    const Eigen::MatrixXcd cnot = cnot_matrix();
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
        state(col) = 1.0;
        for (const auto& gate : circ.gates) {
            check_qubits(circ.qubits, gate.qubits);
            if (gate.name == "u1q") {
                apply_single_qubit(state, gate.qubits.at(0), gate.matrix);
            } else if (gate.name == "cnot") {
                apply_block(state, gate.qubits, cnot);
            } else {
                throw std::invalid_argument("native circuits admit only u1q and cnot gates");
            }
        }
        u.col(col) = state;
    }
    return u;
}

Eigen::VectorXd born_distribution(const NativeCircuit& circ) {
    CircuitDescriptor as_descriptor;
    as_descriptor.qubits = circ.qubits;
    for (const auto& gate : circ.gates) {
        GateOp op;
        op.name = gate.name;
        op.qubits = gate.qubits;
        if (gate.name == "u1q") {
            op.matrix = gate.matrix;
        }
        as_descriptor.gates.push_back(std::move(op));
    }
    return born_distribution(as_descriptor);
}

}  // namespace pmg
