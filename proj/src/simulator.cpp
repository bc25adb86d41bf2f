#include "pmg/simulator.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmg/gates.hpp"
#include "pmg/ideal_model.hpp"
#include "pmg/statevector.hpp"

namespace pmg {

namespace {

const std::complex<double> kHalfAmp(1.0 / std::numbers::sqrt2, 0.0);

// Circuit-order final rotation: adjoint of final_rotation(p, s), i.e.
// exp(i X (pi/4 - pi s / p)). See circuit_rotation_angle.
double circuit_rotation_angle(const ProblemParams& params) {
    return std::numbers::pi / 4.0 -
           std::numbers::pi * static_cast<double>(params.s) / static_cast<double>(params.p);
}

Eigen::Vector2cd plus_state() {
    return Eigen::Vector2cd(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2);
}

Eigen::Vector2cd minus_state() {
    return Eigen::Vector2cd(1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2);
}

// X-basis product state with sign pattern from the block's pathsum bits:
// qubit i is |+> when bit i of pattern is clear, |-> otherwise.
Eigen::VectorXcd sign_product_state(int size, std::uint64_t pattern) {
    const Eigen::Index dim = Eigen::Index(1) << size;
    const double amp = std::pow(2.0, -0.5 * size);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index z = 0; z < dim; ++z) {
        const int flips = std::popcount(static_cast<std::uint64_t>(z) & pattern);
        v(z) = (flips % 2) ? -amp : amp;
    }
    return v;
}

std::vector<int> block_qubits(const ProblemParams& params, const Block& block) {
    std::vector<int> qubits(static_cast<std::size_t>(block.size));
    for (int i = 0; i < block.size; ++i) {
        qubits[static_cast<std::size_t>(i)] = params.n - 2 + block.first + i;
    }
    return qubits;
}

DiscretePMF dense_pipeline(const ProblemParams& params, bool unitary_block_gate) {
    params.validate();
    if (params.total_bits() > kEnumerationBitCap) {
        throw std::invalid_argument("q_pmf_dense capped at 2n-1 <= 24 qubits");
    }
    Eigen::VectorXcd state = bpm_state(params.n);
    const Eigen::Matrix2cd h =
        (Eigen::Matrix2cd() << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2,
         1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2)
            .finished();
    for (int q = params.n - 1; q <= 2 * params.n - 2; ++q) {
        apply_single_qubit(state, q, h);
    }
    for (const Block& block : block_partition(params.n, params.m)) {
        const BlockGateParams gate_params{block.size, params.theta};
        const Eigen::MatrixXcd gate = unitary_block_gate
                                          ? Eigen::MatrixXcd(build_u(gate_params).adjoint())
                                          : Eigen::MatrixXcd(build_a(gate_params).adjoint());
        const std::vector<int> qubits = block_qubits(params, block);
        apply_block(state, qubits, gate);
        apply_block(state, qubits, build_c(block.size).transpose());
    }
    apply_single_qubit(state, 2 * params.n - 2, x_rotation(circuit_rotation_angle(params)));

    DiscretePMF pmf;
    pmf.kind = unitary_block_gate ? ModelKind::UnitaryQ : ModelKind::AnalyticP;
    pmf.total_bits = params.total_bits();
    pmf.params = params;
    pmf.table = state.cwiseAbs2();
    return pmf;
}

}  // namespace

std::vector<Block> block_partition(int n, int m) {
    if (m < 2 || m > n - 1) {
        throw std::invalid_argument("block size must satisfy 2 <= m <= n-1");
    }
    const int vertex_qubits = n - 1;
    const int full = vertex_qubits / m;
    const int remainder = vertex_qubits % m;
    std::vector<Block> blocks;
    blocks.reserve(static_cast<std::size_t>(full) + 1);
    for (int b = 0; b < full; ++b) {
        blocks.push_back(Block{1 + b * m, m});
    }
    if (remainder == 1) {
        blocks.back().size += 1;
    } else if (remainder >= 2) {
        blocks.push_back(Block{1 + full * m, remainder});
    }
    return blocks;
}

double Rank2State::norm() const {
    // ||a+ v+ + a- v-||^2 with product-state branches.
    std::complex<double> overlap(1.0, 0.0);
    double plus_sq = 1.0;
    double minus_sq = 1.0;
    for (std::size_t b = 0; b < blocks_plus.size(); ++b) {
        overlap *= blocks_minus[b].dot(blocks_plus[b]);
        plus_sq *= blocks_plus[b].squaredNorm();
        minus_sq *= blocks_minus[b].squaredNorm();
    }
    overlap *= final_minus.dot(final_plus);
    plus_sq *= final_plus.squaredNorm();
    minus_sq *= final_minus.squaredNorm();
    const double cross = 2.0 * (std::conj(amp_minus) * amp_plus * overlap).real();
    return std::sqrt(std::norm(amp_plus) * plus_sq + std::norm(amp_minus) * minus_sq + cross);
}

QModel::QModel(const ProblemParams& params)
    : params_(params), tree_(build_tree(params.n)), partition_(block_partition(params.n, params.m)) {
    params_.validate();
    for (const Block& block : partition_) {
        if (vectors_.contains(block.size)) {
            continue;
        }
        const BlockGateParams gate_params{block.size, params_.theta};
        // Operator order: U^dag then the inverse cyclic shift.
        const Eigen::MatrixXcd gate =
            build_c(block.size).transpose() * build_u(gate_params).adjoint();
        const std::uint64_t patterns = std::uint64_t(1) << block.size;
        std::vector<Eigen::VectorXcd> vecs(patterns);
        for (std::uint64_t t = 0; t < patterns; ++t) {
            vecs[t] = gate * sign_product_state(block.size, t);
        }
        vectors_[block.size] = std::move(vecs);
    }
    const Eigen::Matrix2cd rot = x_rotation(circuit_rotation_angle(params_));
    final_plus_ = rot * plus_state();
    final_minus_ = rot * minus_state();
}

std::uint64_t QModel::block_pattern(const Bits& h, const Block& block) const {
    std::uint64_t pattern = 0;
    for (int i = 0; i < block.size; ++i) {
        pattern |= static_cast<std::uint64_t>(h[static_cast<std::size_t>(block.first - 1 + i)] & 1u)
                   << i;
    }
    return pattern;
}

const Eigen::VectorXcd& QModel::branch_vector(const Block& block, std::uint64_t pattern) const {
    return vectors_.at(block.size)[pattern];
}

Rank2State QModel::state(const Bits& d) const {
    if (static_cast<int>(d.size()) != params_.n - 1) {
        throw std::invalid_argument("q_state requires |d| == n-1");
    }
    const Bits h = pathsum(tree_, d);
    Rank2State st;
    st.amp_plus = kHalfAmp;
    st.amp_minus = kHalfAmp;
    st.partition = partition_;
    st.final_plus = final_plus_;
    st.final_minus = final_minus_;
    st.blocks_plus.reserve(partition_.size());
    st.blocks_minus.reserve(partition_.size());
    for (const Block& block : partition_) {
        const std::uint64_t pattern = block_pattern(h, block);
        const std::uint64_t flipped = pattern ^ ((std::uint64_t(1) << block.size) - 1);
        st.blocks_plus.push_back(branch_vector(block, pattern));
        st.blocks_minus.push_back(branch_vector(block, flipped));
    }
    return st;
}

double QModel::prob(const Sample& sample) const {
    if (static_cast<int>(sample.x.size()) != params_.n - 1) {
        throw std::invalid_argument("sample has wrong |x|");
    }
    const Rank2State st = state(sample.d);
    std::complex<double> plus = st.amp_plus;
    std::complex<double> minus = st.amp_minus;
    for (std::size_t b = 0; b < st.partition.size(); ++b) {
        const Block& block = st.partition[b];
        std::uint64_t outcome = 0;
        for (int i = 0; i < block.size; ++i) {
            outcome |= static_cast<std::uint64_t>(
                           sample.x[static_cast<std::size_t>(block.first - 1 + i)] & 1u)
                       << i;
        }
        plus *= st.blocks_plus[b](static_cast<Eigen::Index>(outcome));
        minus *= st.blocks_minus[b](static_cast<Eigen::Index>(outcome));
    }
    const std::complex<double> amp = plus * st.final_plus(sample.y & 1u) +
                                     minus * st.final_minus(sample.y & 1u);
    return std::ldexp(std::norm(amp), -(params_.n - 1));
}

Sample QModel::sample(Rng& rng) const {
    Sample out;
    out.d = random_bits(rng, params_.n - 1);
    const Bits h = pathsum(tree_, out.d);
    out.x.assign(static_cast<std::size_t>(params_.n - 1), 0);

    // Suffix products of branch overlaps <v_b^- | v_b^+>; the final-qubit
    // overlap <r^-|r^+> multiplies every suffix. These vanish identically
    // for the unitary gate set, but the accumulator stays general.
    const std::size_t nblocks = partition_.size();
    std::vector<std::complex<double>> suffix(nblocks + 1);
    suffix[nblocks] = final_minus_.dot(final_plus_);
    std::vector<const Eigen::VectorXcd*> vplus(nblocks);
    std::vector<const Eigen::VectorXcd*> vminus(nblocks);
    for (std::size_t b = nblocks; b-- > 0;) {
        const Block& block = partition_[b];
        const std::uint64_t pattern = block_pattern(h, block);
        const std::uint64_t flipped = pattern ^ ((std::uint64_t(1) << block.size) - 1);
        vplus[b] = &branch_vector(block, pattern);
        vminus[b] = &branch_vector(block, flipped);
        suffix[b] = suffix[b + 1] * vminus[b]->dot(*vplus[b]);
    }

    std::complex<double> plus = kHalfAmp;
    std::complex<double> minus = kHalfAmp;
    for (std::size_t b = 0; b < nblocks; ++b) {
        const Block& block = partition_[b];
        const Eigen::Index outcomes = Eigen::Index(1) << block.size;
        double total = 0.0;
        Eigen::VectorXd weights(outcomes);
        for (Eigen::Index l = 0; l < outcomes; ++l) {
            const std::complex<double> ap = plus * (*vplus[b])(l);
            const std::complex<double> am = minus * (*vminus[b])(l);
            const double w = std::norm(ap) + std::norm(am) +
                             2.0 * (std::conj(am) * ap * suffix[b + 1]).real();
            weights(l) = w > 0.0 ? w : 0.0;
            total += weights(l);
        }
        const double draw = rng.next_double() * total;
        double cumulative = 0.0;
        Eigen::Index chosen = -1;
        Eigen::Index last_positive = 0;
        for (Eigen::Index l = 0; l < outcomes; ++l) {
            if (weights(l) > 0.0) {
                last_positive = l;
            }
            cumulative += weights(l);
            if (draw < cumulative) {
                chosen = l;
                break;
            }
        }
        if (chosen < 0) {
            chosen = last_positive;  // cumulative rounding fell one ulp short
        }
        for (int i = 0; i < block.size; ++i) {
            out.x[static_cast<std::size_t>(block.first - 1 + i)] =
                static_cast<std::uint8_t>((static_cast<std::uint64_t>(chosen) >> i) & 1u);
        }
        plus *= (*vplus[b])(chosen);
        minus *= (*vminus[b])(chosen);
    }

    double w0 = std::norm(plus * final_plus_(0) + minus * final_minus_(0));
    double w1 = std::norm(plus * final_plus_(1) + minus * final_minus_(1));
    out.y = rng.next_double() * (w0 + w1) < w0 ? 0 : 1;
    return out;
}

DiscretePMF q_pmf_rank2(const ProblemParams& params) {
    auto model = std::make_shared<QModel>(params);
    DiscretePMF pmf;
    pmf.kind = ModelKind::UnitaryQ;
    pmf.total_bits = params.total_bits();
    pmf.params = params;
    pmf.prob = [model](const Sample& sample) { return model->prob(sample); };
    return pmf;
}

DiscretePMF q_pmf_dense(const ProblemParams& params) {
    return dense_pipeline(params, true);
}

DiscretePMF a_circuit_pmf_dense(const ProblemParams& params) {
    return dense_pipeline(params, false);
}

CircuitDescriptor circuit_descriptor(const ProblemParams& params) {
    params.validate();
    CircuitDescriptor circ;
    circ.qubits = params.total_bits();
    GateOp prep;
    prep.name = "bpm_prep";
    prep.qubits.resize(static_cast<std::size_t>(circ.qubits));
    for (int q = 0; q < circ.qubits; ++q) {
        prep.qubits[static_cast<std::size_t>(q)] = q;
    }
    prep.layer = 0;
    circ.gates.push_back(std::move(prep));

    for (int q = params.n - 1; q <= 2 * params.n - 2; ++q) {
        GateOp h;
        h.name = "h";
        h.qubits = {q};
        h.layer = 1;
        circ.gates.push_back(std::move(h));
    }
    for (const Block& block : block_partition(params.n, params.m)) {
        GateOp u;
        u.name = "u_dag";
        u.qubits = block_qubits(params, block);
        u.theta = params.theta;
        u.layer = 2;
        circ.gates.push_back(std::move(u));
    }
    for (const Block& block : block_partition(params.n, params.m)) {
        GateOp c;
        c.name = "cshift_inv";
        c.qubits = block_qubits(params, block);
        c.layer = 3;
        circ.gates.push_back(std::move(c));
    }
    GateOp rot;
    rot.name = "xrot";
    rot.qubits = {2 * params.n - 2};
    rot.theta = circuit_rotation_angle(params);
    rot.layer = 4;
    circ.gates.push_back(std::move(rot));
    return circ;
}

}  // namespace pmg
