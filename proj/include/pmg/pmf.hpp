#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>

#include "pmg/params.hpp"

namespace pmg {

enum class ModelKind { Ideal, AnalyticP, UnitaryQ, External };

// Full-table enumeration is refused beyond this many outcome bits.
constexpr int kEnumerationBitCap = 24;

// Packed outcome index: d_i at bit i-1, x_i at bit n-2+i, y at bit 2n-2.
std::uint64_t outcome_index(const Sample& sample);
Sample outcome_from_index(std::uint64_t z, int total_bits);

// Exact probability oracle over (d, x, y) outcomes with an optional dense
// table. The oracle is the source of truth; dense() materializes it once
// for enumerable sizes.
struct DiscretePMF {
    ModelKind kind = ModelKind::External;
    int total_bits = 0;
    std::optional<ProblemParams> params;
    std::function<double(const Sample&)> prob;
    std::optional<Eigen::VectorXd> table;

    double operator()(const Sample& sample) const;
    bool enumerable() const { return total_bits <= kEnumerationBitCap; }
    const Eigen::VectorXd& dense();  // throws std::invalid_argument over the cap
};

}  // namespace pmg
