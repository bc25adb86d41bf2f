#include "pmg/numtheory.hpp"

#include <stdexcept>

namespace pmg {

bool is_prime(std::int64_t p) {
    if (p < 2) {
        throw std::invalid_argument("is_prime requires p >= 2");
    }
    if (p < 4) {
        return true;
    }
    if (p % 2 == 0) {
        return false;
    }
    for (std::int64_t d = 3; d * d <= p; d += 2) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

std::uint8_t majmod(std::int64_t p, std::int64_t s, std::int64_t k) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("majmod requires an odd prime p >= 3");
    }
    if (s < 0 || s >= p) {
        throw std::invalid_argument("majmod requires 0 <= s < p");
    }
    std::int64_t r = (k + s) % p;
    if (r < 0) {
        r += p;
    }
    return static_cast<std::uint8_t>(2 * r > p ? 1 : 0);
}

std::uint8_t parity(const Bits& x) {
    std::uint8_t acc = 0;
    for (std::uint8_t bit : x) {
        acc ^= bit & 1u;
    }
    return acc;
}

std::int64_t signed_weight(const Bits& x, const Bits& h) {
    if (x.size() != h.size()) {
        throw std::invalid_argument("signed_weight requires |x| == |h|");
    }
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] & 1u) {
            acc += (h[i] & 1u) ? -1 : 1;
        }
    }
    return acc;
}

}  // namespace pmg
