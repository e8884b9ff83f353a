// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <doctest.h>

#include "qkdlab/attacks.hpp"
#include "qkdlab/thresholds.hpp"
#include "qkdlab/decoy.hpp"

using namespace qkdlab;

TEST_CASE("binary_entropy known points") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    // frozen from a 30-digit evaluation of the closed form
    CHECK(binary_entropy(0.11) == doctest::Approx(0.499915958164528).epsilon(1e-13));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("binary_entropy symmetric about 0.5") {
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        CHECK(std::abs(binary_entropy(x) - binary_entropy(1.0 - x)) < 1e-12);
    }
}

TEST_CASE("poisson_pmf known points") {
    CHECK(poisson_pmf(0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(poisson_pmf(3, 6.44) == doctest::Approx(0.0710640391303697).epsilon(1e-13));
    // the n = 600 tail is many orders below 1e-8 (it underflows binary64),
    // which is what justifies the series cutoff
    const double tail = poisson_pmf(600, 20.0);
    CHECK(std::isfinite(tail));
    CHECK(tail >= 0.0);
    CHECK(tail < 1e-8);
    // still strictly positive where binary64 can represent it
    CHECK(poisson_pmf(150, 20.0) > 0.0);
    CHECK_THROWS_AS(poisson_pmf(1, -0.5), std::domain_error);
}

TEST_CASE("poisson_pmf normalizes over the series cutoff") {
    for (const double mean : {0.1, 1.0, 5.0, 10.0, 20.0}) {
        double sum = 0.0;
        for (unsigned n = 0; n <= kSeriesCutoff; ++n) {
            sum += poisson_pmf(n, mean);
        }
        CHECK(std::abs(sum - 1.0) < 1e-8);
    }
}

TEST_CASE("gain_from_yields basic identities") {
    CHECK(gain_from_yields([](unsigned) { return 1.0; }, 2.5)
          == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(gain_from_yields([](unsigned) { return 0.0; }, 2.5) == 0.0);
    // series reproduces the closed-form USD gain
    const double series = gain_from_yields(usd_yield_profile(), 6.44);
    CHECK(std::abs(series - usd_gain_closed(6.44)) < 1e-8);
    CHECK(series == doctest::Approx(0.614601407701010).epsilon(1e-10));
}

TEST_CASE("truncation stability: 600 vs 700 terms") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        // random bounded yields with Y0 = 0
        const double a = unif(gen);
        const double b = unif(gen);
        auto yields = [a, b](unsigned n) {
            return n == 0 ? 0.0 : a + (1.0 - a) * b * (n % 7) / 7.0;
        };
        const double mean = 0.1 + unif(gen) * 19.9;
        const double q600 = gain_from_yields(yields, mean, 600);
        const double q700 = gain_from_yields(yields, mean, 700);
        CHECK(std::abs(q700 - q600) < 1e-10);
    }
}

TEST_CASE("decoy params validation") {
    CHECK_THROWS_AS(validate(DecoyParams{0.1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(DecoyParams{0.1, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(DecoyParams{-0.5, 0.1}), std::invalid_argument);
    CHECK(validate(DecoyParams{0.5, 0.1}).empty());
    CHECK(validate(DecoyParams{2.0, 0.1}).size() == 1);  // atypical mu
    CHECK(validate(DecoyParams{2.0, 1.2}).size() == 2);
}

TEST_CASE("y1_lower examples") {
    const DecoyParams params{0.5, 0.1};

    SUBCASE("zero at the balance condition") {
        // Qnu e^nu == (nu^2/mu^2) Qmu e^mu, Q0 = 0
        GainSet gains{0.1, 0.0, 0.0};
        gains.q_nu = (params.nu * params.nu) / (params.mu * params.mu) * gains.q_mu
            * std::exp(params.mu) / std::exp(params.nu);
        CHECK(std::abs(y1_lower(gains, params)) < 1e-15);
    }
    SUBCASE("all-zero gains give zero") {
        CHECK(y1_lower(GainSet{0.0, 0.0, 0.0}, params) == 0.0);
    }
    SUBCASE("zero at the solved threshold") {
        AttackConfig config;
        config.kappa = solve_usd_threshold(params).kappa_linear;
        CHECK(std::abs(y1_lower(attack_gains(params, config), params)) < 1e-9);
        // ... and visibly nonzero a fraction of a dB away
        config.kappa = std::pow(10.0, 11.0 / 10.0);
        CHECK(y1_lower(attack_gains(params, config), params) < -1e-3);
    }
}

TEST_CASE("y1_lower is linear in each gain with the expected signs") {
    const DecoyParams params{0.5, 0.1};
    const GainSet base{0.3, 0.05, 0.001};
    const double f0 = y1_lower(base, params);
    const double h = 1e-3;

    auto bump = [&](double dmu, double dnu, double d0) {
        return y1_lower(GainSet{base.q_mu + dmu, base.q_nu + dnu, base.q_0 + d0}, params);
    };
    const double d_mu = (bump(h, 0, 0) - f0) / h;
    const double d_nu = (bump(0, h, 0) - f0) / h;
    const double d_0 = (bump(0, 0, h) - f0) / h;
    CHECK(d_nu > 0.0);
    CHECK(d_mu < 0.0);
    CHECK(d_0 < 0.0);
    // exact linearity: doubling the step doubles the increment
    CHECK(bump(2 * h, 0, 0) - f0 == doctest::Approx(2 * (bump(h, 0, 0) - f0)).epsilon(1e-9));
    CHECK(bump(0, 2 * h, 0) - f0 == doctest::Approx(2 * (bump(0, h, 0) - f0)).epsilon(1e-9));
}

TEST_CASE("e1_upper") {
    const DecoyParams params{0.5, 0.1};

    SUBCASE("zero error budget") {
        const auto bound = e1_upper(GainSet{0.1, 0.05, 0.0}, ErrorSet{0.0, 0.5}, 0.01, params);
        REQUIRE(bound.value.has_value());
        CHECK(*bound.value == 0.0);
        CHECK_FALSE(bound.capped);
    }
    SUBCASE("vacuous when the yield bound is not positive") {
        CHECK_FALSE(e1_upper(GainSet{0.1, 0.05, 0.0}, ErrorSet{0.02, 0.5}, 0.0, params)
                        .value.has_value());
        CHECK_FALSE(e1_upper(GainSet{0.1, 0.05, 0.0}, ErrorSet{0.02, 0.5}, -0.1, params)
                        .value.has_value());
    }
    SUBCASE("capped at 0.5 when the bound is slack") {
        const auto bound =
            e1_upper(GainSet{0.2, 0.036, 0.0}, ErrorSet{0.02, 0.5}, 0.01, params);
        REQUIRE(bound.value.has_value());
        CHECK(bound.raw == doctest::Approx(0.795723061014466).epsilon(1e-12));
        CHECK(*bound.value == 0.5);
        CHECK(bound.capped);
    }
}

TEST_CASE("key_rate") {
    CHECK(key_rate(0.1, 0.1, 0.0, 0.0).raw == doctest::Approx(1.0).epsilon(1e-15));
    const auto zero_q1 = key_rate(0.0, 0.1, 0.0, 0.3);
    CHECK(zero_q1.raw == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(zero_q1.clamped == 0.0);
    const auto negative = key_rate(0.05, 0.1, 0.11, 0.3);
    CHECK(negative.raw == doctest::Approx(-0.049957979082264).epsilon(1e-12));
    CHECK(negative.clamped == 0.0);
    CHECK_THROWS_AS(key_rate(0.1, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("ec_leak helper") {
    CHECK(ec_leak(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ec_leak(0.11, 1.2) == doctest::Approx(1.2 * binary_entropy(0.11)).epsilon(1e-15));
}

TEST_CASE("decoy_estimate ties the pieces together") {
    const DecoyParams params{0.5, 0.1};
    AttackConfig config;
    config.kappa = std::pow(10.0, 15.0 / 10.0);  // above threshold
    const GainSet gains = attack_gains(params, config);
    const auto est = decoy_estimate(gains, ErrorSet{}, params, 0.0);
    CHECK(est.y1_lower > 0.0);
    CHECK(est.q1 == doctest::Approx(est.y1_lower * 0.5 * std::exp(-0.5)).epsilon(1e-15));
    CHECK(est.rate.clamped >= 0.0);
}
