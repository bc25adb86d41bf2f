#include "pmg/pmf.hpp"

#include <stdexcept>

namespace pmg {

std::uint64_t outcome_index(const Sample& sample) {
    const std::size_t edge_bits = sample.d.size();
    if (sample.x.size() != edge_bits) {
        throw std::invalid_argument("sample has |d| != |x|");
    }
    std::uint64_t z = index_from_bits(sample.d);
    z |= index_from_bits(sample.x) << edge_bits;
    z |= static_cast<std::uint64_t>(sample.y & 1u) << (2 * edge_bits);
    return z;
}

Sample outcome_from_index(std::uint64_t z, int total_bits) {
    if (total_bits < 3 || total_bits % 2 == 0) {
        throw std::invalid_argument("outcome space must have odd size 2n-1");
    }
    const int edge_bits = (total_bits - 1) / 2;
    Sample sample;
    sample.d = bits_from_index(z, edge_bits);
    sample.x = bits_from_index(z >> edge_bits, edge_bits);
    sample.y = static_cast<std::uint8_t>((z >> (2 * edge_bits)) & 1u);
    return sample;
}

double DiscretePMF::operator()(const Sample& sample) const {
    if (table.has_value()) {
        return (*table)(static_cast<Eigen::Index>(outcome_index(sample)));
    }
    return prob(sample);
}

const Eigen::VectorXd& DiscretePMF::dense() {
    if (table.has_value()) {
        return *table;
    }
    if (!enumerable()) {
        throw std::invalid_argument("outcome space too large to enumerate (cap: 24 bits)");
    }
    if (!prob) {
        throw std::invalid_argument("pmf has neither a table nor an oracle");
    }
    const std::uint64_t size = std::uint64_t(1) << total_bits;
    Eigen::VectorXd dense_table(static_cast<Eigen::Index>(size));
    for (std::uint64_t z = 0; z < size; ++z) {
        dense_table(static_cast<Eigen::Index>(z)) = prob(outcome_from_index(z, total_bits));
    }
    table = std::move(dense_table);
    return *table;
}

}  // namespace pmg
