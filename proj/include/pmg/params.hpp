#pragma once

#include <cstdint>

#include "pmg/bits.hpp"

namespace pmg {

// m = ceil(2/c + 1) capped at n-1; the asymptotic prescription for the block
// size, used only as a default.
int default_block_size(int n, double c = 0.25);

// Instance descriptor for the D_{n,p,s} family. n counts tree vertices
// including the root; admissible n are odd and >= 3 (the heap-shaped tree
// then has every internal vertex with exactly two children; n = 2^h - 1
// gives the perfect tree). d and x strings have n-1 bits each.
struct ProblemParams {
    int n = 7;
    std::int64_t p = 3;  // odd prime
    std::int64_t s = 0;  // hyperplane shift in [0, p)
    double c = 0.25;     // advisory asymptotic exponent in (0, 1/3)
    int m = 2;           // gate block size, 2 <= m <= n-1
    double theta = 0.0;  // always pi / p, derived

    // m == 0 selects default_block_size(n, c).
    static ProblemParams make(int n, std::int64_t p, std::int64_t s, int m = 0,
                              double c = 0.25);

    void validate() const;  // throws std::invalid_argument

    int edge_bits() const { return n - 1; }
    int total_bits() const { return 2 * n - 1; }
};

// One draw (d, x, y) from any of the model distributions.
struct Sample {
    Bits d;
    Bits x;
    std::uint8_t y = 0;
};

}  // namespace pmg
