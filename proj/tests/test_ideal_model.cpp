#include <doctest.h>

#include <cmath>

#include "pmg/ideal_model.hpp"
#include "pmg/numtheory.hpp"

using namespace pmg;

TEST_CASE("pmmajmod examples") {
    const Bits zero4 = bits_from_string("0000");
    {
        auto params = ProblemParams::make(5, 3, 0, 2);
        CHECK(pmmajmod(params, bits_from_string("1010"), zero4) == 0);
    }
    {
        auto params = ProblemParams::make(5, 3, 2, 2);
        CHECK(pmmajmod(params, bits_from_string("0110"), zero4) == 1);
    }
    {
        auto params = ProblemParams::make(3, 3, 0, 2);
        CHECK(pmmajmod(params, bits_from_string("00"), bits_from_string("11")) == 1);
        CHECK_THROWS_AS(pmmajmod(params, bits_from_string("0"), bits_from_string("11")),
                        std::invalid_argument);
    }
}

TEST_CASE("flat-tree label matches pmmajmod with d = 0") {
    auto params = ProblemParams::make(7, 5, 2, 2);
    const Bits d0(6, 0);
    for (std::uint64_t x = 0; x < 64; ++x) {
        const Bits xb = bits_from_index(x, 6);
        CHECK(majmod_parity_label(params, xb) == pmmajmod(params, d0, xb));
    }
}

TEST_CASE("ideal_pmf at n=3 is uniform on correct labels") {
    auto params = ProblemParams::make(3, 3, 0, 2);
    DiscretePMF pmf = ideal_pmf(params);
    int support = 0;
    double total = 0.0;
    for (std::uint64_t z = 0; z < 32; ++z) {
        const Sample sample = outcome_from_index(z, 5);
        const double prob = pmf(sample);
        total += prob;
        if (prob > 0.0) {
            ++support;
            CHECK(prob == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
            CHECK(sample.y == pmmajmod(params, sample.d, sample.x));
        } else {
            CHECK(sample.y != pmmajmod(params, sample.d, sample.x));
        }
    }
    CHECK(support == 16);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analytic_conditional values") {
    {
        auto params = ProblemParams::make(7, 5, 0, 2);
        CHECK(analytic_conditional(params, 0) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(analytic_conditional(params, 1) == doctest::Approx(0.97552825814758).epsilon(1e-9));
        CHECK(analytic_conditional(params, 4) == doctest::Approx(0.02447174185242).epsilon(1e-7));
        // p-periodicity in k.
        for (std::int64_t k = -7; k < 7; ++k) {
            CHECK(analytic_conditional(params, k) ==
                  doctest::Approx(analytic_conditional(params, k + 5)).epsilon(1e-12));
        }
    }
    {
        // shift identity: conditional(k; s) = conditional(k+s; 0)
        auto shifted = ProblemParams::make(7, 7, 3, 2);
        auto base = ProblemParams::make(7, 7, 0, 2);
        for (std::int64_t k = 0; k < 7; ++k) {
            CHECK(analytic_conditional(shifted, k) ==
                  doctest::Approx(analytic_conditional(base, k + 3)).epsilon(1e-12));
        }
    }
}

TEST_CASE("analytic_pmf mass, uniform pair marginal, example conditional") {
    for (int n : {3, 5, 7}) {
        auto params = ProblemParams::make(n, 3, 0, 2);
        DiscretePMF pmf = analytic_pmf(params);
        const Eigen::VectorXd& table = pmf.dense();
        CHECK(table.sum() == doctest::Approx(1.0).epsilon(1e-12));

        // marginal of (d, x) is exactly uniform
        const std::uint64_t pairs = std::uint64_t(1) << (2 * n - 2);
        for (std::uint64_t z = 0; z < pairs; z += 97) {
            const double mass = table(z) + table(z + pairs);
            CHECK(mass == doctest::Approx(std::ldexp(1.0, -(2 * n - 2))).epsilon(1e-12));
        }
    }

    auto params = ProblemParams::make(3, 3, 0, 2);
    DiscretePMF pmf = analytic_pmf(params);
    Sample sample;
    sample.d = bits_from_string("00");
    sample.x = bits_from_string("10");
    sample.y = 1;
    const double p_y1 = pmf(sample) * 16.0;
    CHECK(p_y1 == doctest::Approx(0.93301270189222).epsilon(1e-9));
}

TEST_CASE("disagreement mass is independent of s") {
    for (std::int64_t p : {3, 5, 7, 11}) {
        auto base = ProblemParams::make(7, p, 0, 2);
        double reference = 0.0;
        for (std::int64_t k = 0; k < p; ++k) {
            reference += disagreement_probability(base, k);
        }
        for (std::int64_t s = 1; s < p; ++s) {
            auto params = ProblemParams::make(7, p, s, 2);
            double total = 0.0;
            for (std::int64_t k = 0; k < p; ++k) {
                total += disagreement_probability(params, k);
            }
            CHECK(total == doctest::Approx(reference).epsilon(1e-10));
        }
    }
}

TEST_CASE("samplers produce consistent draws") {
    auto params = ProblemParams::make(7, 3, 1, 2);
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        const Sample sample = ideal_sample(params, rng);
        CHECK(sample.d.size() == 6);
        CHECK(sample.y == pmmajmod(params, sample.d, sample.x));
    }
    DiscretePMF pmf = analytic_pmf(params);
    for (int i = 0; i < 200; ++i) {
        const Sample sample = analytic_sample(params, rng);
        CHECK(pmf(sample) > 0.0);
    }
}
