#include "pmg/metrics.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pmg/ideal_model.hpp"

namespace pmg {

double tv_exact(DiscretePMF& a, DiscretePMF& b) {
    if (a.total_bits != b.total_bits) {
        throw std::invalid_argument("tv_exact requires matching outcome spaces");
    }
    if (!a.enumerable()) {
        throw std::invalid_argument("outcome space too large to enumerate (cap: 24 bits)");
    }
    return 0.5 * (a.dense() - b.dense()).cwiseAbs().sum();
}

Eigen::VectorXd signed_step_residue_distribution(int terms, std::int64_t p) {
    if (terms < 1 || p < 2) {
        throw std::invalid_argument("residue distribution needs terms >= 1 and p >= 2");
    }
    const auto dim = static_cast<Eigen::Index>(p);
    Eigen::VectorXd dist = Eigen::VectorXd::Zero(dim);
    dist(0) = 1.0;
    Eigen::VectorXd next(dim);
    for (int step = 0; step < terms; ++step) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            next(r) = 0.5 * dist(r) + 0.25 * dist((r + dim - 1) % dim) +
                      0.25 * dist((r + 1) % dim);
        }
        dist.swap(next);
    }
    return dist;
}

double tv_p_ideal_dp(const ProblemParams& params) {
    params.validate();
    const Eigen::VectorXd residue = signed_step_residue_distribution(params.n - 1, params.p);
    double tv = 0.0;
    for (std::int64_t k = 0; k < params.p; ++k) {
        tv += residue(static_cast<Eigen::Index>(k)) * disagreement_probability(params, k);
    }
    return tv;
}

double tv_p_ideal_bound(const ProblemParams& params) {
    const auto p = static_cast<double>(params.p);
    const double residual =
        std::pow(p, 1.5) * std::exp(-static_cast<double>(params.n - 1) / (2.0 * p * p));
    return 0.5 - 1.0 / std::numbers::pi + 0.5 / p + residual;
}

double tv_empirical(const DiscretePMF& oracle, const std::vector<Sample>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("tv_empirical requires at least one sample");
    }
    if (!oracle.enumerable()) {
        // Conditional-disagreement fallback for spaces the plug-in cannot see.
        double acc = 0.0;
        for (const Sample& sample : samples) {
            Sample flipped = sample;
            flipped.y = static_cast<std::uint8_t>(sample.y ^ 1u);
            const double p_obs = oracle(sample);
            const double p_alt = oracle(flipped);
            const double pair = p_obs + p_alt;
            acc += (pair > 0.0) ? 1.0 - p_obs / pair : 1.0;
        }
        return acc / static_cast<double>(samples.size());
    }
    std::map<std::string, std::pair<const Sample*, std::int64_t>> counts;
    for (const Sample& sample : samples) {
        std::string key = bits_to_string(sample.d);
        key += '|';
        key += bits_to_string(sample.x);
        key += sample.y ? '1' : '0';
        auto [it, inserted] = counts.try_emplace(std::move(key), &sample, 0);
        it->second.second += 1;
    }
    const double m = static_cast<double>(samples.size());
    double observed_l1 = 0.0;
    double observed_mass = 0.0;
    for (const auto& [key, entry] : counts) {
        const double prob = oracle(*entry.first);
        observed_l1 += std::abs(static_cast<double>(entry.second) / m - prob);
        observed_mass += prob;
    }
    return 0.5 * observed_l1 + 0.5 * (1.0 - observed_mass);
}

double modsum_uniformity(const std::vector<int>& coefficients, std::int64_t p) {
    if (p < 2) {
        throw std::invalid_argument("modsum_uniformity requires p >= 2");
    }
    if (coefficients.empty()) {
        throw std::invalid_argument("modsum_uniformity requires at least one coefficient");
    }
    const auto dim = static_cast<Eigen::Index>(p);
    Eigen::VectorXd dist = Eigen::VectorXd::Zero(dim);
    dist(0) = 1.0;
    Eigen::VectorXd next(dim);
    for (int a : coefficients) {
        const std::int64_t step = ((a % p) + p) % p;
        if (step == 0) {
            throw std::invalid_argument("coefficients must be nonzero modulo p");
        }
        for (Eigen::Index r = 0; r < dim; ++r) {
            next(r) = 0.5 * (dist(r) + dist((r + dim - static_cast<Eigen::Index>(step)) % dim));
        }
        dist.swap(next);
    }
    const double uniform = 1.0 / static_cast<double>(p);
    return 0.5 * (dist.array() - uniform).abs().sum();
}

bool cosine_margin(std::int64_t p) {
    if (p < 3) {
        throw std::invalid_argument("cosine_margin requires p >= 3");
    }
    const double pd = static_cast<double>(p);
    const double c = std::cos(-std::numbers::pi / 4.0 + std::numbers::pi / pd);
    return c * c > 0.5 + std::numbers::pi / (3.0 * pd);
}

int LocalFunction::locality() const {
    int loc = 0;
    for (const Output& out : outputs) {
        loc = std::max(loc, static_cast<int>(out.deps.size()));
    }
    return loc;
}

void LocalFunction::validate() const {
    if (inputs < 1 || inputs > kEnumerationBitCap) {
        throw std::invalid_argument("local function inputs must lie in [1, 24]");
    }
    if (outputs.empty() || static_cast<int>(outputs.size()) > kEnumerationBitCap) {
        throw std::invalid_argument("local function outputs must lie in [1, 24]");
    }
    for (const Output& out : outputs) {
        if (out.deps.size() > 20) {
            throw std::invalid_argument("dependency set too large");
        }
        for (int dep : out.deps) {
            if (dep < 0 || dep >= inputs) {
                throw std::invalid_argument("dependency index out of range");
            }
        }
        if (out.table.size() != (std::size_t(1) << out.deps.size())) {
            throw std::invalid_argument("truth table must have 2^{|deps|} bits");
        }
    }
}

LocalFunction local_function_from_json(const nlohmann::json& j) {
    LocalFunction f;
    f.inputs = j.at("inputs").get<int>();
    for (const auto& out_json : j.at("outputs")) {
        LocalFunction::Output out;
        out.deps = out_json.at("deps").get<std::vector<int>>();
        out.table = bits_from_string(out_json.at("table").get<std::string>());
        f.outputs.push_back(std::move(out));
    }
    f.validate();
    return f;
}

nlohmann::json local_function_to_json(const LocalFunction& f) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& out : f.outputs) {
        outputs.push_back({{"deps", out.deps}, {"table", bits_to_string(out.table)}});
    }
    return {{"inputs", f.inputs}, {"outputs", std::move(outputs)}};
}

DiscretePMF local_function_pmf(const LocalFunction& f) {
    f.validate();
    const int out_bits = static_cast<int>(f.outputs.size());
    const std::uint64_t in_count = std::uint64_t(1) << f.inputs;
    Eigen::VectorXd table = Eigen::VectorXd::Zero(Eigen::Index(1) << out_bits);
    const double mass = std::ldexp(1.0, -f.inputs);
    for (std::uint64_t u = 0; u < in_count; ++u) {
        std::uint64_t outcome = 0;
        for (int j = 0; j < out_bits; ++j) {
            const auto& out = f.outputs[static_cast<std::size_t>(j)];
            std::uint64_t idx = 0;
            for (std::size_t b = 0; b < out.deps.size(); ++b) {
                idx |= ((u >> out.deps[b]) & 1u) << b;
            }
            outcome |= static_cast<std::uint64_t>(out.table[idx] & 1u) << j;
        }
        table(static_cast<Eigen::Index>(outcome)) += mass;
    }
    DiscretePMF pmf;
    pmf.kind = ModelKind::External;
    pmf.total_bits = out_bits;
    pmf.table = std::move(table);
    return pmf;
}

}  // namespace pmg
