#include "pmg/tree.hpp"

#include <stdexcept>
#include <string>

namespace pmg {

BalancedTree build_tree(int n) {
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("tree size must be odd and >= 3, got " + std::to_string(n));
    }
    BalancedTree tree;
    tree.n = n;
    tree.parent.resize(static_cast<std::size_t>(n));
    tree.parent[0] = -1;
    for (int v = 1; v < n; ++v) {
        tree.parent[static_cast<std::size_t>(v)] = (v - 1) / 2;
    }
    int height = 0;
    for (int count = n; count > 0; count /= 2) {
        ++height;
    }
    tree.height = height;
    return tree;
}

Bits pathsum(const BalancedTree& tree, const Bits& d) {
    const int edges = tree.n - 1;
    if (static_cast<int>(d.size()) != edges) {
        throw std::invalid_argument("pathsum requires |d| == n-1");
    }
    Bits h(static_cast<std::size_t>(edges));
    for (int v = 1; v < tree.n; ++v) {
        const int par = tree.parent[static_cast<std::size_t>(v)];
        const std::uint8_t above = (par == 0) ? 0 : h[static_cast<std::size_t>(par - 1)];
        h[static_cast<std::size_t>(v - 1)] =
            static_cast<std::uint8_t>((d[static_cast<std::size_t>(v - 1)] ^ above) & 1u);
    }
    return h;
}

}  // namespace pmg
