#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "pmg/circuit.hpp"
#include "pmg/pmf.hpp"
#include "pmg/rng.hpp"
#include "pmg/tree.hpp"

namespace pmg {

// Contiguous run of vertex labels [first, first + size), 1-based.
struct Block {
    int first = 1;
    int size = 0;
};

// Consecutive blocks of size m over vertex qubits 1..n-1. A remainder of
// exactly one qubit is merged into the last block (the cyclic gate family
// degenerates at size 1); remainders >= 2 stand alone.
std::vector<Block> block_partition(int n, int m);

// Two-branch product form of the pre-measurement vertex state conditioned
// on an edge outcome d: global state
//   amp_plus (x)_b blocks_plus[b] (x) final_plus  +  (minus branch).
struct Rank2State {
    std::complex<double> amp_plus;
    std::complex<double> amp_minus;
    std::vector<Eigen::VectorXcd> blocks_plus;
    std::vector<Eigen::VectorXcd> blocks_minus;
    Eigen::Vector2cd final_plus;
    Eigen::Vector2cd final_minus;
    std::vector<Block> partition;

    double norm() const;
};

// Exact sampler / probability oracle for the unitary circuit's Born
// distribution. Block gates and branch vectors are cached per block size
// and per in-block pathsum pattern, so one draw costs O((n/m) 2^m).
class QModel {
public:
    explicit QModel(const ProblemParams& params);

    const ProblemParams& params() const { return params_; }
    const std::vector<Block>& partition() const { return partition_; }

    Rank2State state(const Bits& d) const;
    double prob(const Sample& sample) const;
    Sample sample(Rng& rng) const;

private:
    const Eigen::VectorXcd& branch_vector(const Block& block, std::uint64_t pattern) const;
    std::uint64_t block_pattern(const Bits& h, const Block& block) const;

    ProblemParams params_;
    BalancedTree tree_;
    std::vector<Block> partition_;
    // block size -> branch vectors indexed by pathsum pattern; the minus
    // branch of pattern t is the plus branch of ~t.
    std::map<int, std::vector<Eigen::VectorXcd>> vectors_;
    Eigen::Vector2cd final_plus_;
    Eigen::Vector2cd final_minus_;
};

// Oracle-backed PMF over (d, x, y) using the rank-2 evaluation.
DiscretePMF q_pmf_rank2(const ProblemParams& params);

// Dense statevector reference (2n-1 <= 24 qubits): prepares |BPM_n> from its
// defining superposition and applies the gate layers explicitly.
DiscretePMF q_pmf_dense(const ProblemParams& params);

// Same dense pipeline with the non-unitary block gate A^dag in place of
// U^dag; its Born law is the analytic cos^2 model exactly, which makes it a
// convention-pinning cross-check.
DiscretePMF a_circuit_pmf_dense(const ProblemParams& params);

// Explicit gate list for the generator circuit; bpm_prep stays an opaque
// labeled block, everything else carries enough data to re-simulate and to
// compile.
CircuitDescriptor circuit_descriptor(const ProblemParams& params);

}  // namespace pmg
