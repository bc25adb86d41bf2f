#include "pmg/learner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmg/numtheory.hpp"
#include "pmg/simulator.hpp"

namespace pmg {

std::int64_t required_samples(std::int64_t p, double delta) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("required_samples needs an odd prime p >= 3");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    const double pd = static_cast<double>(p);
    const double epsilon = 1.0 / (7.0 * pd);
    const double m = (pd * pd / (2.0 * epsilon * epsilon)) *
                     std::log(2.0 * pd / delta);
    return static_cast<std::int64_t>(std::ceil(m));
}

void LearnerConfig::finalize() {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("p must be an odd prime >= 3");
    }
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("n must be odd and >= 3");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    const double pd = static_cast<double>(p);
    if (epsilon == 0.0) {
        epsilon = 1.0 / (7.0 * pd);
    }
    if (tau == 0.0) {
        tau = 0.99 * std::numbers::pi / (6.0 * pd);
    }
    if (M == 0) {
        M = static_cast<std::int64_t>(
            std::ceil((pd * pd / (2.0 * epsilon * epsilon)) * std::log(2.0 * pd / delta)));
    }
    if (m == 0) {
        m = default_block_size(n);
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (!(tau > 0.0 && tau < std::numbers::pi / (6.0 * pd))) {
        throw std::invalid_argument("tau must lie in (0, pi/(6p))");
    }
    if (M < 1) {
        throw std::invalid_argument("sample budget must be >= 1");
    }
    if (m < 2 || m > n - 1) {
        throw std::invalid_argument("m must satisfy 2 <= m <= n-1");
    }
}

VoteAccumulator::VoteAccumulator(std::int64_t p, int n)
    : p_(p),
      n_(n),
      tree_(build_tree(n)),
      sums_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p))),
      counts_(Eigen::VectorXi::Zero(static_cast<Eigen::Index>(p))) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("p must be an odd prime >= 3");
    }
}

void VoteAccumulator::add(const Sample& sample) {
    if (static_cast<int>(sample.d.size()) != n_ - 1 ||
        static_cast<int>(sample.x.size()) != n_ - 1) {
        throw std::invalid_argument("sample has wrong bit lengths for n");
    }
    const Bits h = pathsum(tree_, sample.d);
    const std::int64_t w = signed_weight(sample.x, h);
    const auto k = static_cast<Eigen::Index>(((w % p_) + p_) % p_);
    counts_(k) += 1;
    if (parity(sample.x) == (sample.y & 1u)) {
        sums_(k) += static_cast<double>(p_);
    }
    ++count_;
}

VoteVector VoteAccumulator::finalize() const {
    if (count_ == 0) {
        throw std::invalid_argument("vote vector needs at least one sample");
    }
    VoteVector votes;
    votes.values = sums_ / static_cast<double>(count_);
    votes.counts = counts_;
    return votes;
}

VoteVector build_vote_vector(const std::vector<Sample>& samples, const ProblemParams& params) {
    VoteAccumulator acc(params.p, params.n);
    for (const Sample& sample : samples) {
        acc.add(sample);
    }
    return acc.finalize();
}

std::optional<std::int64_t> find_crossing(const VoteVector& votes, double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("tau must be positive");
    }
    const Eigen::Index p = votes.values.size();
    std::optional<std::int64_t> found;
    for (Eigen::Index k = 0; k < p; ++k) {
        const bool near_half = std::abs(votes.values(k) - 0.5) <= tau;
        const bool next_above = votes.values((k + 1) % p) > 0.5 + tau;
        if (near_half && next_above) {
            if (found.has_value()) {
                return std::nullopt;  // ambiguous: treat as failure
            }
            found = static_cast<std::int64_t>(k);
        }
    }
    return found;
}

std::int64_t recover_s(std::int64_t k_star, std::int64_t p) {
    if (k_star < 0 || k_star >= p) {
        throw std::invalid_argument("k* must lie in [0, p)");
    }
    return (p - k_star) % p;
}

namespace {

LearnResult learn_from_accumulator(const VoteAccumulator& acc, const LearnerConfig& config) {
    LearnResult result;
    result.votes = acc.finalize();
    result.samples_used = acc.count();
    result.k_star = find_crossing(result.votes, config.tau);
    if (!result.k_star.has_value()) {
        result.ok = false;
        return result;
    }
    result.s_hat = recover_s(*result.k_star, config.p);
    auto params = ProblemParams::make(config.n, config.p, *result.s_hat, config.m);
    GeneratorDescription generator;
    generator.params = params;
    generator.circuit = circuit_descriptor(params);
    generator.sample_count = acc.count();
    generator.seed = config.provenance_seed;
    result.generator = std::move(generator);
    result.ok = true;
    return result;
}

}  // namespace

LearnResult learn(const SampleSource& source, LearnerConfig config) {
    config.finalize();
    VoteAccumulator acc(config.p, config.n);
    for (std::int64_t i = 0; i < config.M; ++i) {
        acc.add(source());
    }
    return learn_from_accumulator(acc, config);
}

LearnResult learn(const std::vector<Sample>& samples, LearnerConfig config) {
    config.finalize();
    if (static_cast<std::int64_t>(samples.size()) < config.M) {
        throw std::invalid_argument("sample file smaller than the requested budget M");
    }
    VoteAccumulator acc(config.p, config.n);
    for (std::int64_t i = 0; i < config.M; ++i) {
        acc.add(samples[static_cast<std::size_t>(i)]);
    }
    return learn_from_accumulator(acc, config);
}

nlohmann::json learn_result_to_json(const LearnResult& result) {
    nlohmann::json j;
    j["status"] = result.ok ? "ok" : "failure";
    j["s_hat"] = result.s_hat.has_value() ? nlohmann::json(*result.s_hat) : nlohmann::json();
    j["k_star"] = result.k_star.has_value() ? nlohmann::json(*result.k_star) : nlohmann::json();
    j["M"] = result.samples_used;
    j["V"] = std::vector<double>(result.votes.values.data(),
                                 result.votes.values.data() + result.votes.values.size());
    j["class_counts"] = std::vector<int>(result.votes.counts.data(),
                                         result.votes.counts.data() + result.votes.counts.size());
    j["circuit"] = result.generator.has_value()
                       ? descriptor_to_json(result.generator->circuit)
                       : nlohmann::json();
    return j;
}

}  // namespace pmg
