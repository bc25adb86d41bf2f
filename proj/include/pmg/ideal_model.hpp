#pragma once

#include <cstdint>

#include "pmg/pmf.hpp"
#include "pmg/rng.hpp"
#include "pmg/tree.hpp"

namespace pmg {

// majmod_{p,s}(signed_weight(x, h(d))) xor parity(x).
std::uint8_t pmmajmod(const ProblemParams& params, const Bits& d, const Bits& x);

// The flat-tree convenience (h == 0 everywhere): majmod of the Hamming
// weight xor parity. The label of the plain (x, majmod + parity) family.
std::uint8_t majmod_parity_label(const ProblemParams& params, const Bits& x);

// Deterministic target: Pr[(d,x,y)] = 2^{-(2n-2)} when y = pmmajmod(d,x), else 0.
DiscretePMF ideal_pmf(const ProblemParams& params);
Sample ideal_sample(const ProblemParams& params, Rng& rng);

// cos^2(-pi/4 + (pi/p)(k+s)): probability that y = parity(x) given signed
// class k under the analytic model. p-periodic in k.
double analytic_conditional(const ProblemParams& params, std::int64_t k);

// Probability that the analytic model's y disagrees with pmmajmod on class k:
// sin^2 on the majmod = 0 classes, cos^2 on the rest.
double disagreement_probability(const ProblemParams& params, std::int64_t k);

// Exact analytic law: (d, x) uniform, y = parity(x) with probability
// analytic_conditional(signed class), else flipped.
DiscretePMF analytic_pmf(const ProblemParams& params);
Sample analytic_sample(const ProblemParams& params, Rng& rng);

// Tree-cached variants for tight sampling loops.
Sample ideal_sample(const ProblemParams& params, const BalancedTree& tree, Rng& rng);
Sample analytic_sample(const ProblemParams& params, const BalancedTree& tree, Rng& rng);

// Uniform bits helper shared by the samplers.
Bits random_bits(Rng& rng, int len);

}  // namespace pmg
