#pragma once

#include <cstdint>

#include "pmg/bits.hpp"

namespace pmg {

// Deterministic trial division; intended range is machine-word sized p
// (desk-scale instances keep p small).
bool is_prime(std::int64_t p);

// majmod_{p,s}: reduces k + s into [0, p) and compares against p/2.
// Returns 0 when (k + s) mod p < p/2, else 1. k may be any integer,
// in particular a signed weight. p/2 itself is unreachable for odd p.
std::uint8_t majmod(std::int64_t p, std::int64_t s, std::int64_t k);

// XOR of all bits.
std::uint8_t parity(const Bits& x);

// sum_i x_i * (-1)^{h_i}, exact integer, not reduced mod anything.
// Distinct from the Hamming weight on purpose: the two notions are written
// identically (|x|) in places but never interchangeable here.
std::int64_t signed_weight(const Bits& x, const Bits& h);

}  // namespace pmg
