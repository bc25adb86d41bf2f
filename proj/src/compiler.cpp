#include "pmg/compiler.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmg/gates.hpp"
#include "pmg/statevector.hpp"
#include "pmg/tree.hpp"

namespace pmg {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kSkipTol = 1e-13;

bool is_identity(const Eigen::MatrixXcd& m, double tol) {
    return (m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

void require_unitary(const Eigen::MatrixXcd& u) {
    if (u.rows() != u.cols() || u.rows() < 2) {
        throw std::invalid_argument("decomposition needs a square matrix of dim >= 2");
    }
    const Eigen::MatrixXcd defect =
        u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    if (defect.cwiseAbs().maxCoeff() > kUnitaryTol) {
        throw std::invalid_argument("matrix is not unitary within 1e-10");
    }
}

Eigen::Matrix2cd x_gate() {
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    return x;
}

// Principal square root of a 2x2 unitary. Normal matrices with a repeated
// eigenvalue are scalar, so the degenerate branch is exact.
Eigen::Matrix2cd unitary_sqrt(const Eigen::Matrix2cd& w) {
    const std::complex<double> tr = w.trace();
    const std::complex<double> det = w.determinant();
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    const std::complex<double> l1 = 0.5 * (tr + disc);
    const std::complex<double> l2 = 0.5 * (tr - disc);
    if (std::abs(l1 - l2) < 1e-12) {
        return std::sqrt(l1) * Eigen::Matrix2cd::Identity();
    }
    const Eigen::Matrix2cd eye = Eigen::Matrix2cd::Identity();
    return (std::sqrt(l1) * (w - l2 * eye) - std::sqrt(l2) * (w - l1 * eye)) / (l1 - l2);
}

struct ZYZ {
    double alpha;  // global phase: W = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)
    double beta;
    double gamma;
    double delta;
};

Eigen::Matrix2cd rz(double lambda) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, -lambda / 2.0);
    m(1, 1) = std::polar(1.0, lambda / 2.0);
    return m;
}

Eigen::Matrix2cd ry(double gamma) {
    Eigen::Matrix2cd m;
    const double c = std::cos(gamma / 2.0);
    const double s = std::sin(gamma / 2.0);
    m << c, -s, s, c;
    return m;
}

ZYZ zyz_angles(const Eigen::Matrix2cd& w) {
    ZYZ out{};
    out.alpha = 0.5 * std::arg(w.determinant());
    const Eigen::Matrix2cd v = std::polar(1.0, -out.alpha) * w;
    const double c = std::abs(v(0, 0));
    const double s = std::abs(v(1, 0));
    out.gamma = 2.0 * std::atan2(s, c);
    double sum;   // beta + delta
    double diff;  // beta - delta
    if (c > 1e-12 && s > 1e-12) {
        sum = -2.0 * std::arg(v(0, 0));
        diff = 2.0 * std::arg(v(1, 0));
    } else if (c > 1e-12) {
        sum = -2.0 * std::arg(v(0, 0));
        diff = 0.0;
    } else {
        sum = 0.0;
        diff = 2.0 * std::arg(v(1, 0));
    }
    out.beta = 0.5 * (sum + diff);
    out.delta = 0.5 * (sum - diff);
    return out;
}

class NativeEmitter {
public:
    explicit NativeEmitter(int qubits) { circuit_.qubits = qubits; }

    void u1q(int target, const Eigen::Matrix2cd& m) {
        if (is_identity(m, kSkipTol)) {
            return;
        }
        NativeGate gate;
        gate.name = "u1q";
        gate.qubits = {target};
        gate.matrix = m;
        circuit_.gates.push_back(std::move(gate));
    }

    void cnot(int control, int target) {
        NativeGate gate;
        gate.name = "cnot";
        gate.qubits = {control, target};
        circuit_.gates.push_back(std::move(gate));
    }

    void swap(int a, int b) {
        cnot(a, b);
        cnot(b, a);
        cnot(a, b);
    }

    // Controlled-W with a single control, via W = e^{ia} A X B X C, ABC = I.
    void controlled_u1q(int control, int target, const Eigen::Matrix2cd& w) {
        if (is_identity(w, kSkipTol)) {
            return;
        }
        const ZYZ angles = zyz_angles(w);
        const Eigen::Matrix2cd a = rz(angles.beta) * ry(angles.gamma / 2.0);
        const Eigen::Matrix2cd b =
            ry(-angles.gamma / 2.0) * rz(-(angles.delta + angles.beta) / 2.0);
        const Eigen::Matrix2cd c = rz((angles.delta - angles.beta) / 2.0);
        u1q(target, c);
        cnot(control, target);
        u1q(target, b);
        cnot(control, target);
        u1q(target, a);
        Eigen::Matrix2cd phase = Eigen::Matrix2cd::Identity();
        phase(1, 1) = std::polar(1.0, angles.alpha);
        u1q(control, phase);
    }

    // Ancilla-free multi-controlled W, all controls on |1>.
    void multi_controlled(const std::vector<int>& controls, int target,
                          const Eigen::Matrix2cd& w) {
        if (is_identity(w, kSkipTol)) {
            return;
        }
        if (controls.empty()) {
            u1q(target, w);
            return;
        }
        if (controls.size() == 1) {
            controlled_u1q(controls[0], target, w);
            return;
        }
        const Eigen::Matrix2cd v = unitary_sqrt(w);
        std::vector<int> rest(controls.begin(), controls.end() - 1);
        const int last = controls.back();
        controlled_u1q(last, target, v);
        multi_controlled(rest, last, x_gate());
        controlled_u1q(last, target, v.adjoint());
        multi_controlled(rest, last, x_gate());
        multi_controlled(rest, target, v);
    }

    // Controls carry (qubit, required value); zero-valued controls are
    // X-conjugated.
    void mixed_controlled(const std::vector<std::pair<int, int>>& controls, int target,
                          const Eigen::Matrix2cd& w) {
        std::vector<int> lines;
        lines.reserve(controls.size());
        for (const auto& [qubit, value] : controls) {
            if (value == 0) {
                u1q(qubit, x_gate());
            }
            lines.push_back(qubit);
        }
        multi_controlled(lines, target, w);
        for (const auto& [qubit, value] : controls) {
            if (value == 0) {
                u1q(qubit, x_gate());
            }
        }
    }

    NativeCircuit take() { return std::move(circuit_); }

private:
    NativeCircuit circuit_;
};

// Emits the gates realizing a two-level factor between basis states i and j.
void emit_two_level(NativeEmitter& emitter, int m, int i, int j, const Eigen::Matrix2cd& u) {
    if (is_identity(u, kSkipTol)) {
        return;
    }
    // Gray path from i to j, flipping differing bits from low to high.
    std::vector<int> path{i};
    int current = i;
    const unsigned diff = static_cast<unsigned>(i ^ j);
    for (int bit = 0; bit < m; ++bit) {
        if ((diff >> bit) & 1u) {
            current ^= 1 << bit;
            path.push_back(current);
        }
    }
    const std::size_t steps = path.size() - 1;

    auto controls_for = [&](int from, int to) {
        const int bit = std::countr_zero(static_cast<unsigned>(from ^ to));
        std::vector<std::pair<int, int>> controls;
        for (int q = 0; q < m; ++q) {
            if (q != bit) {
                controls.emplace_back(q, (from >> q) & 1);
            }
        }
        return std::make_pair(controls, bit);
    };

    // Chain |path[k]> <-> |path[k+1]> for all but the final step.
    for (std::size_t k = 0; k + 1 < steps; ++k) {
        auto [controls, bit] = controls_for(path[k], path[k + 1]);
        emitter.mixed_controlled(controls, bit, x_gate());
    }
    // Controlled u on the last edge; local |0> of the target corresponds to
    // whichever of the pair carries a 0 there.
    {
        const int from = path[steps - 1];  // carries the i coordinate
        const int to = path[steps];        // the j coordinate
        auto [controls, bit] = controls_for(from, to);
        Eigen::Matrix2cd local = u;
        if ((from >> bit) & 1) {
            local = x_gate() * u * x_gate();
        }
        emitter.mixed_controlled(controls, bit, local);
    }
    // Undo the chain.
    for (std::size_t k = steps - 1; k-- > 0;) {
        auto [controls, bit] = controls_for(path[k], path[k + 1]);
        emitter.mixed_controlled(controls, bit, x_gate());
    }
}

}  // namespace

TwoLevelDecomposition two_level_decompose(const Eigen::MatrixXcd& u) {
    require_unitary(u);
    const Eigen::Index dim = u.rows();
    TwoLevelDecomposition out;
    out.dim = dim;
    Eigen::MatrixXcd work = u;

    for (Eigen::Index col = 0; col + 2 < dim; ++col) {
        for (Eigen::Index row = col + 1; row < dim; ++row) {
            const std::complex<double> b = work(row, col);
            if (std::abs(b) <= kSkipTol) {
                continue;
            }
            const std::complex<double> a = work(col, col);
            const double norm = std::sqrt(std::norm(a) + std::norm(b));
            // Rows (col, row) of work get the Givens update; the emitted
            // factor is its adjoint.
            const Eigen::RowVectorXcd top = work.row(col);
            const Eigen::RowVectorXcd bottom = work.row(row);
            work.row(col) = (std::conj(a) * top + std::conj(b) * bottom) / norm;
            work.row(row) = (b * top - a * bottom) / norm;
            TwoLevelFactor factor;
            factor.i = static_cast<int>(col);
            factor.j = static_cast<int>(row);
            factor.u << a / norm, std::conj(b) / norm, b / norm, -std::conj(a) / norm;
            out.rotations.push_back(std::move(factor));
        }
        // Row and column `col` are now finalized up to a phase.
        const std::complex<double> residual = work(col, col);
        if (std::abs(residual - 1.0) > kSkipTol) {
            out.phases.push_back(PhaseFactor{static_cast<int>(col), residual});
        }
    }

    // Trailing 2x2 corner as a single factor.
    Eigen::Matrix2cd corner;
    corner << work(dim - 2, dim - 2), work(dim - 2, dim - 1), work(dim - 1, dim - 2),
        work(dim - 1, dim - 1);
    if (!is_identity(corner, kSkipTol)) {
        TwoLevelFactor factor;
        factor.i = static_cast<int>(dim - 2);
        factor.j = static_cast<int>(dim - 1);
        factor.u = corner;
        out.rotations.push_back(std::move(factor));
    }
    return out;
}

Eigen::MatrixXcd two_level_product(const TwoLevelDecomposition& decomposition) {
    const Eigen::Index dim = decomposition.dim;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (const TwoLevelFactor& factor : decomposition.rotations) {
        const Eigen::VectorXcd ci = m.col(factor.i);
        const Eigen::VectorXcd cj = m.col(factor.j);
        m.col(factor.i) = ci * factor.u(0, 0) + cj * factor.u(1, 0);
        m.col(factor.j) = ci * factor.u(0, 1) + cj * factor.u(1, 1);
    }
    for (const PhaseFactor& phase : decomposition.phases) {
        m.col(phase.index) *= phase.phase;
    }
    return m;
}

NativeCircuit lower_to_native(const TwoLevelDecomposition& decomposition, int m) {
    if (decomposition.dim != (Eigen::Index(1) << m)) {
        throw std::invalid_argument("decomposition dimension must equal 2^m");
    }
    NativeEmitter emitter(m);
    // Operator order is rotations[0] ... rotations.back() * diag(phases), so
    // the phases act first in time, then the rotations in reverse.
    for (const PhaseFactor& phase : decomposition.phases) {
        Eigen::Matrix2cd gate = Eigen::Matrix2cd::Identity();
        const int bit0 = phase.index & 1;
        gate(bit0, bit0) = phase.phase;
        std::vector<std::pair<int, int>> controls;
        for (int q = 1; q < m; ++q) {
            controls.emplace_back(q, (phase.index >> q) & 1);
        }
        emitter.mixed_controlled(controls, 0, gate);
    }
    for (auto it = decomposition.rotations.rbegin(); it != decomposition.rotations.rend(); ++it) {
        emit_two_level(emitter, m, it->i, it->j, it->u);
    }
    return emitter.take();
}

NativeCircuit compile_block_unitary(const Eigen::MatrixXcd& u, int m) {
    return lower_to_native(two_level_decompose(u), m);
}

NativeCircuit compile_descriptor(const CircuitDescriptor& circ) {
    NativeEmitter emitter(circ.qubits);
    const Eigen::Matrix2cd h =
        (Eigen::Matrix2cd() << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2,
         1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2)
            .finished();
    bool first = true;
    for (const GateOp& gate : circ.gates) {
        if (gate.name == "bpm_prep") {
            if (!first) {
                throw std::invalid_argument("bpm_prep must be the first gate");
            }
            if (static_cast<int>(gate.qubits.size()) != circ.qubits || circ.qubits % 2 == 0) {
                throw std::invalid_argument("bpm_prep must cover all 2n-1 qubits");
            }
            const int n = (circ.qubits + 1) / 2;
            const BalancedTree tree = build_tree(n);
            const int root_qubit = 2 * n - 2;
            for (int e = 0; e < n - 1; ++e) {
                emitter.u1q(e, h);
            }
            emitter.u1q(root_qubit, h);
            for (int v = 1; v < n; ++v) {
                emitter.cnot(root_qubit, n - 2 + v);
            }
            for (int v = 1; v < n; ++v) {
                for (int u_vert = v; u_vert != 0; u_vert = tree.parent[u_vert]) {
                    emitter.cnot(u_vert - 1, n - 2 + v);
                }
            }
        } else if (gate.name == "h") {
            emitter.u1q(gate.qubits.at(0), h);
        } else if (gate.name == "xrot") {
            emitter.u1q(gate.qubits.at(0), x_rotation(gate.theta.value()));
        } else if (gate.name == "u1q") {
            emitter.u1q(gate.qubits.at(0), Eigen::Matrix2cd(gate.matrix.value()));
        } else if (gate.name == "cnot") {
            emitter.cnot(gate.qubits.at(0), gate.qubits.at(1));
        } else if (gate.name == "cshift_inv") {
            // Inverse left label-rotation: SWAP ladder from the high end.
            const int size = static_cast<int>(gate.qubits.size());
            for (int i = size - 1; i >= 1; --i) {
                emitter.swap(gate.qubits.at(i - 1), gate.qubits.at(i));
            }
        } else {
            const int size = static_cast<int>(gate.qubits.size());
            if (size > 6) {
                throw std::invalid_argument("block too large to compile (max 6 qubits)");
            }
            Eigen::MatrixXcd matrix;
            if (gate.name == "u_dag") {
                matrix = build_u({size, gate.theta.value()}).adjoint();
            } else if (gate.matrix.has_value()) {
                matrix = *gate.matrix;
            } else {
                throw std::invalid_argument("cannot compile gate: " + gate.name);
            }
            NativeCircuit block = compile_block_unitary(matrix, size);
            for (NativeGate native : block.gates) {
                for (int& q : native.qubits) {
                    q = gate.qubits.at(static_cast<std::size_t>(q));
                }
                if (native.name == "u1q") {
                    emitter.u1q(native.qubits.at(0), native.matrix);
                } else {
                    emitter.cnot(native.qubits.at(0), native.qubits.at(1));
                }
            }
        }
        first = false;
    }
    return emitter.take();
}

}  // namespace pmg
