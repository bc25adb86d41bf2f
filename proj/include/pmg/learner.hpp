#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pmg/circuit.hpp"
#include "pmg/pmf.hpp"
#include "pmg/tree.hpp"

namespace pmg {

// Hoeffding instantiation of the mean-estimator bound: entries of the vote
// vector live in [0, p], per-coordinate precision epsilon = 1/(7p), union
// bound over the p coordinates:
//   M = ceil( (p^2 / (2 eps^2)) ln(2p / delta) ) = ceil( (49 p^4 / 2) ln(2p/delta) ).
std::int64_t required_samples(std::int64_t p, double delta);

struct LearnerConfig {
    std::int64_t p = 3;
    int n = 7;
    double delta = 0.1;
    double epsilon = 0.0;  // 0 -> 1/(7p)
    double tau = 0.0;      // 0 -> 0.99 * pi/(6p)
    std::int64_t M = 0;    // 0 -> from the Hoeffding bound at epsilon
    int m = 0;             // block size for the emitted circuit; 0 -> default
    std::uint64_t provenance_seed = 0;

    void finalize();  // fills defaults, then validates (tau < pi/(6p), ...)
};

struct VoteVector {
    Eigen::VectorXd values;  // p entries in [0, p]; entry k estimates
                             // cos^2(-pi/4 + (pi/p)(k + s))
    Eigen::VectorXi counts;  // per-residue-class sample counts (diagnostic)
};

// Streaming accumulator behind both the list-based and oracle-based paths.
class VoteAccumulator {
public:
    VoteAccumulator(std::int64_t p, int n);
    void add(const Sample& sample);
    VoteVector finalize() const;  // throws if no samples were added
    std::int64_t count() const { return count_; }

private:
    std::int64_t p_;
    int n_;
    BalancedTree tree_;
    Eigen::VectorXd sums_;
    Eigen::VectorXi counts_;
    std::int64_t count_ = 0;
};

VoteVector build_vote_vector(const std::vector<Sample>& samples, const ProblemParams& params);

// The unique k* with |V_k* - 1/2| <= tau and V_{k*+1 mod p} > 1/2 + tau;
// nullopt (failure) when no candidate or more than one exists.
std::optional<std::int64_t> find_crossing(const VoteVector& votes, double tau);

// s = (p - k*) mod p.
std::int64_t recover_s(std::int64_t k_star, std::int64_t p);

struct GeneratorDescription {
    ProblemParams params;  // carries the learned s
    CircuitDescriptor circuit;
    std::int64_t sample_count = 0;
    std::uint64_t seed = 0;
};

struct LearnResult {
    bool ok = false;
    VoteVector votes;
    std::optional<std::int64_t> k_star;
    std::optional<std::int64_t> s_hat;
    std::int64_t samples_used = 0;
    std::optional<GeneratorDescription> generator;
};

using SampleSource = std::function<Sample()>;

// Draws config.M samples, builds the vote vector, locates the crossing and
// emits the generator circuit for the recovered s. Failure is a value.
LearnResult learn(const SampleSource& source, LearnerConfig config);
LearnResult learn(const std::vector<Sample>& samples, LearnerConfig config);

nlohmann::json learn_result_to_json(const LearnResult& result);

}  // namespace pmg
