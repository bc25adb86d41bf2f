#include "pmg/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pmg/numtheory.hpp"

namespace pmg {

int default_block_size(int n, double c) {
    int m = static_cast<int>(std::ceil(2.0 / c + 1.0));
    if (m > n - 1) {
        m = n - 1;
    }
    return m < 2 ? 2 : m;
}

ProblemParams ProblemParams::make(int n, std::int64_t p, std::int64_t s, int m, double c) {
    ProblemParams params;
    params.n = n;
    params.p = p;
    params.s = s;
    params.c = c;
    params.m = (m == 0) ? default_block_size(n, c) : m;
    params.theta = std::numbers::pi / static_cast<double>(p);
    params.validate();
    return params;
}

void ProblemParams::validate() const {
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("n must be odd and >= 3, got " + std::to_string(n));
    }
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("p must be an odd prime >= 3, got " + std::to_string(p));
    }
    if (s < 0 || s >= p) {
        throw std::invalid_argument("s must lie in [0, p)");
    }
    if (!(c > 0.0 && c < 1.0 / 3.0)) {
        throw std::invalid_argument("c must lie in (0, 1/3)");
    }
    if (m < 2 || m > n - 1) {
        throw std::invalid_argument("m must satisfy 2 <= m <= n-1");
    }
    if (theta != std::numbers::pi / static_cast<double>(p)) {
        throw std::invalid_argument("theta must equal pi/p; it is a derived field");
    }
}

}  // namespace pmg
