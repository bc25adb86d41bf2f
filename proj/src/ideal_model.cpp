#include "pmg/ideal_model.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "pmg/numtheory.hpp"

namespace pmg {

namespace {

double uniform_pair_mass(const ProblemParams& params) {
    return std::ldexp(1.0, -(2 * params.n - 2));
}

void check_lengths(const ProblemParams& params, const Bits& d, const Bits& x) {
    if (static_cast<int>(d.size()) != params.n - 1 ||
        static_cast<int>(x.size()) != params.n - 1) {
        throw std::invalid_argument("d and x must have n-1 bits");
    }
}

}  // namespace

std::uint8_t pmmajmod(const ProblemParams& params, const Bits& d, const Bits& x) {
    check_lengths(params, d, x);
    const BalancedTree tree = build_tree(params.n);
    const Bits h = pathsum(tree, d);
    const std::int64_t k = signed_weight(x, h);
    return static_cast<std::uint8_t>(majmod(params.p, params.s, k) ^ parity(x));
}

std::uint8_t majmod_parity_label(const ProblemParams& params, const Bits& x) {
    return static_cast<std::uint8_t>(majmod(params.p, params.s, hamming_weight(x)) ^ parity(x));
}

DiscretePMF ideal_pmf(const ProblemParams& params) {
    params.validate();
    auto tree = std::make_shared<BalancedTree>(build_tree(params.n));
    const double mass = uniform_pair_mass(params);
    DiscretePMF pmf;
    pmf.kind = ModelKind::Ideal;
    pmf.total_bits = params.total_bits();
    pmf.params = params;
    pmf.prob = [params, tree, mass](const Sample& sample) -> double {
        check_lengths(params, sample.d, sample.x);
        const Bits h = pathsum(*tree, sample.d);
        const std::int64_t k = signed_weight(sample.x, h);
        const std::uint8_t label =
            static_cast<std::uint8_t>(majmod(params.p, params.s, k) ^ parity(sample.x));
        return (sample.y == label) ? mass : 0.0;
    };
    return pmf;
}

Bits random_bits(Rng& rng, int len) {
    Bits out(static_cast<std::size_t>(len));
    for (auto& bit : out) {
        bit = rng.next_bit();
    }
    return out;
}

Sample ideal_sample(const ProblemParams& params, const BalancedTree& tree, Rng& rng) {
    Sample sample;
    sample.d = random_bits(rng, params.n - 1);
    sample.x = random_bits(rng, params.n - 1);
    const Bits h = pathsum(tree, sample.d);
    const std::int64_t k = signed_weight(sample.x, h);
    sample.y = static_cast<std::uint8_t>(majmod(params.p, params.s, k) ^ parity(sample.x));
    return sample;
}

Sample ideal_sample(const ProblemParams& params, Rng& rng) {
    const BalancedTree tree = build_tree(params.n);
    return ideal_sample(params, tree, rng);
}

double analytic_conditional(const ProblemParams& params, std::int64_t k) {
    const double angle = -std::numbers::pi / 4.0 +
                         params.theta * static_cast<double>(k + params.s);
    const double c = std::cos(angle);
    return c * c;
}

double disagreement_probability(const ProblemParams& params, std::int64_t k) {
    const double q = analytic_conditional(params, k);
    return majmod(params.p, params.s, k) ? q : 1.0 - q;
}

DiscretePMF analytic_pmf(const ProblemParams& params) {
    params.validate();
    auto tree = std::make_shared<BalancedTree>(build_tree(params.n));
    const double mass = uniform_pair_mass(params);
    DiscretePMF pmf;
    pmf.kind = ModelKind::AnalyticP;
    pmf.total_bits = params.total_bits();
    pmf.params = params;
    pmf.prob = [params, tree, mass](const Sample& sample) -> double {
        check_lengths(params, sample.d, sample.x);
        const Bits h = pathsum(*tree, sample.d);
        const std::int64_t k = signed_weight(sample.x, h);
        const double q = analytic_conditional(params, k);
        return mass * ((sample.y == parity(sample.x)) ? q : 1.0 - q);
    };
    return pmf;
}

Sample analytic_sample(const ProblemParams& params, const BalancedTree& tree, Rng& rng) {
    Sample sample;
    sample.d = random_bits(rng, params.n - 1);
    sample.x = random_bits(rng, params.n - 1);
    const Bits h = pathsum(tree, sample.d);
    const std::int64_t k = signed_weight(sample.x, h);
    const double q = analytic_conditional(params, k);
    const std::uint8_t base = parity(sample.x);
    sample.y = rng.bernoulli(q) ? base : static_cast<std::uint8_t>(base ^ 1u);
    return sample;
}

Sample analytic_sample(const ProblemParams& params, Rng& rng) {
    const BalancedTree tree = build_tree(params.n);
    return analytic_sample(params, tree, rng);
}

}  // namespace pmg
