#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <vector>

#include "pmg/pmf.hpp"

namespace pmg {

// (1/2) sum |P - Q| over the full outcome space. Both arguments must share
// the outcome space and be enumerable (tables are materialized on demand).
double tv_exact(DiscretePMF& a, DiscretePMF& b);

// Exact TV(analytic model, ideal target) without enumeration: the two laws
// share the exactly-uniform (d, x) marginal and the ideal conditional is
// deterministic, so TV = E[f_s(k mod p)] where k is the signed weight of a
// uniform (x, h) pair. The residue law of k is an O(n p) convolution of
// n-1 iid steps in {0, +1, -1} with weights (1/2, 1/4, 1/4). Scales to
// n ~ 10^4.
double tv_p_ideal_dp(const ProblemParams& params);

// 1/2 - 1/pi + 1/(2p) + p^{3/2} exp(-(n-1)/(2p^2)), the analytic upper
// bound tv_p_ideal_dp is checked against.
double tv_p_ideal_bound(const ProblemParams& params);

// Residue distribution over Z_p of sum_i x_i (-1)^{h_i} with (x, h) uniform,
// i ranging over `terms` positions.
Eigen::VectorXd signed_step_residue_distribution(int terms, std::int64_t p);

// Empirical TV against an oracle; diagnostic only, positively biased for
// small sample counts. Two regimes:
//  - enumerable outcome space: the plug-in
//    (1/2) sum_observed |freq - P| + (1/2)(1 - P(observed support));
//  - larger spaces, where raw plug-in saturates at 1: the observed y is
//    treated as a point-mass conditional at its (d, x) and the conditional
//    disagreement 1 - P(y | d, x) is averaged. Exact in expectation for
//    deterministic-conditional sources; for stochastic sources it floors at
//    E[2q(1-q)] instead of 0.
double tv_empirical(const DiscretePMF& oracle, const std::vector<Sample>& samples);

// Exact TV between sum_i a_i x_i mod p (x uniform) and the uniform law on
// Z_p, by convolution. Coefficients must be nonzero mod p.
double modsum_uniformity(const std::vector<int>& coefficients, std::int64_t p);

// cos^2(-pi/4 + pi/p) > 1/2 + pi/(3p); holds for every p >= 3.
bool cosine_margin(std::int64_t p);

// d-local function: every output bit reads at most locality() input bits
// through an explicit truth table.
struct LocalFunction {
    int inputs = 0;
    struct Output {
        std::vector<int> deps;        // input indices, deps[0] = table LSB
        std::vector<std::uint8_t> table;  // 2^{|deps|} bits
    };
    std::vector<Output> outputs;

    int locality() const;
    void validate() const;
};

LocalFunction local_function_from_json(const nlohmann::json& j);
nlohmann::json local_function_to_json(const LocalFunction& f);

// Exact output distribution f(U) over 2^{outputs} outcomes by enumerating
// all 2^{inputs} inputs (inputs capped at 24).
DiscretePMF local_function_pmf(const LocalFunction& f);

}  // namespace pmg
