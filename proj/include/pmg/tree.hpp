#pragma once

#include <vector>

#include "pmg/bits.hpp"

namespace pmg {

// Heap-indexed binary tree on n vertices: root = 0, vertex v's children are
// 2v+1 and 2v+2, level order. Admissible n are odd and >= 3, so every
// internal vertex has exactly two children; n = 2^h - 1 is the perfect case.
// Non-root vertex i in [1, n-1] carries the vertex bit x_i and its parent
// edge carries the edge bit d_i.
struct BalancedTree {
    int n = 0;
    int height = 0;           // number of levels
    std::vector<int> parent;  // parent[i] for i in [0, n-1]; parent[0] = -1

    bool is_perfect() const { return ((n + 1) & n) == 0; }
    // Leaves form a level-order suffix.
    int first_leaf() const { return (n - 1) / 2; }
};

// Throws std::invalid_argument unless n is odd and >= 3.
BalancedTree build_tree(int n);

// h(d): for each non-root vertex, the parity of the edge bits on the path
// from the root. Computed by h_i = d_i ^ h_{parent(i)} in level order.
// |d| must equal n-1; result has n-1 bits.
Bits pathsum(const BalancedTree& tree, const Bits& d);

}  // namespace pmg
