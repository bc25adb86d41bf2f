#include <doctest.h>

#include "pmg/numtheory.hpp"
#include "pmg/rng.hpp"

using namespace pmg;

TEST_CASE("is_prime on small values") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(23));
    CHECK_FALSE(is_prime(21));
    CHECK_FALSE(is_prime(9));
    CHECK(is_prime(9973));
    CHECK_THROWS_AS(is_prime(1), std::invalid_argument);
}

TEST_CASE("majmod basics") {
    CHECK(majmod(3, 0, 0) == 0);
    CHECK(majmod(3, 0, 2) == 1);
    // (9 + 3) mod 23 = 12 > 11.5
    CHECK(majmod(23, 3, 9) == 1);
    CHECK_THROWS_AS(majmod(4, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(majmod(5, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(majmod(5, -1, 1), std::invalid_argument);
}

TEST_CASE("majmod periodicity and shift identity") {
    for (std::int64_t p : {3, 5, 7, 23}) {
        for (std::int64_t s = 0; s < p; ++s) {
            for (std::int64_t k = -2 * p; k <= 2 * p; ++k) {
                CHECK(majmod(p, s, k) == majmod(p, s, k + p));
                CHECK(majmod(p, s, k) == majmod(p, 0, k + s));
            }
        }
    }
}

TEST_CASE("parity examples and linearity") {
    CHECK(parity(bits_from_string("000")) == 0);
    CHECK(parity(bits_from_string("101")) == 0);
    CHECK(parity(bits_from_string("1110")) == 1);

    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Bits a(11), b(11);
        for (int i = 0; i < 11; ++i) {
            a[i] = rng.next_bit();
            b[i] = rng.next_bit();
        }
        CHECK(parity(bits_xor(a, b)) == (parity(a) ^ parity(b)));
    }
}

TEST_CASE("signed_weight examples") {
    CHECK(signed_weight(bits_from_string("0000"), bits_from_string("1010")) == 0);
    CHECK(signed_weight(bits_from_string("1111"), bits_from_string("0000")) == 4);
    CHECK(signed_weight(bits_from_string("1101"), bits_from_string("0110")) == 1);
    CHECK_THROWS_AS(signed_weight(bits_from_string("10"), bits_from_string("100")),
                    std::invalid_argument);
}

TEST_CASE("signed_weight reduces to Hamming weight and is bounded") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int len = 1 + static_cast<int>(rng.next_below(16));
        Bits x(len), h(len), zero(len, 0);
        for (int i = 0; i < len; ++i) {
            x[i] = rng.next_bit();
            h[i] = rng.next_bit();
        }
        CHECK(signed_weight(x, zero) == hamming_weight(x));
        CHECK(std::abs(signed_weight(x, h)) <= hamming_weight(x));
    }
}
