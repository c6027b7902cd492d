#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "horext/modulus.hpp"

using namespace horext;

TEST_CASE("modulus evaluation basics") {
    const auto lin = ModulusOfContinuity::linear(10.0);
    CHECK(lin(0.0) == 0.0);
    CHECK(lin(0.3) == doctest::Approx(0.3));

    const auto pow_half = ModulusOfContinuity::power(0.5, 10.0);
    CHECK(pow_half(0.25) == doctest::Approx(0.5));
    CHECK(pow_half(0.0) == 0.0);

    CHECK_THROWS_AS(lin(-0.1), std::domain_error);
    CHECK_THROWS_AS(lin(10.5), std::domain_error);
    CHECK_THROWS_AS(ModulusOfContinuity::power(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModulusOfContinuity::power(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("tabulated modulus interpolates and extends with the last secant") {
    const auto tab = ModulusOfContinuity::table(
        {{0.0, 0.0}, {1.0, 1.0}, {2.0, 1.5}, {4.0, 2.0}}, 10.0);
    CHECK(tab(0.5) == doctest::Approx(0.5));
    CHECK(tab(1.5) == doctest::Approx(1.25));
    CHECK(tab(3.0) == doctest::Approx(1.75));
    // Past the last knot: slope (2.0 - 1.5) / 2 = 0.25.
    CHECK(tab(6.0) == doctest::Approx(2.0 + 0.25 * 2.0));
}

TEST_CASE("non-concave knots are rejected with the violating triple named") {
    try {
        ModulusOfContinuity::table({{0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}}, 10.0);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("not concave") != std::string::npos);
        CHECK(msg.find("0.0") != std::string::npos);
    }
    CHECK_THROWS_AS(ModulusOfContinuity::table({{0.1, 0.0}, {1.0, 1.0}}, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModulusOfContinuity::table({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}, 10.0),
                    std::invalid_argument);
}

TEST_CASE("grid scan: monotone, w(t)/t nonincreasing, subadditive") {
    const std::vector<ModulusOfContinuity> all = {
        ModulusOfContinuity::linear(4.0),
        ModulusOfContinuity::power(0.5, 4.0),
        ModulusOfContinuity::power(0.85, 4.0),
        ModulusOfContinuity::table({{0.0, 0.0}, {0.5, 0.9}, {1.0, 1.2}, {2.0, 1.4}}, 4.0),
    };
    for (const auto& w : all) {
        double prev = 0.0, prev_ratio = 0.0;
        for (int i = 1; i <= 200; ++i) {
            const double t = 2.0 * i / 200.0;
            const double v = w(t);
            CHECK(v >= prev - 1e-14);
            const double ratio = v / t;
            if (i > 1) CHECK(ratio <= prev_ratio * (1.0 + 1e-12));
            prev = v;
            prev_ratio = ratio;
        }
        for (int i = 1; i <= 40; ++i) {
            for (int j = 1; j <= 40 - i; ++j) {
                const double s = i / 20.0, t = j / 20.0;
                CHECK(w(s + t) <= w(s) + w(t) + 1e-12);
            }
        }
    }
}

TEST_CASE("holder seminorm basics") {
    const auto lin = ModulusOfContinuity::linear(10.0);
    // D^1 of x^2/2 sampled at {0, 0.5, 1} is {0, 0.5, 1}: slope-1 data.
    std::vector<std::pair<double, double>> vals = {{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}};
    CHECK(holder_seminorm(vals, lin, 1) == doctest::Approx(1.0));

    std::vector<std::pair<double, double>> constant = {{0.0, 2.0}, {0.7, 2.0}, {1.0, 2.0}};
    CHECK(holder_seminorm(constant, lin, 1) == 0.0);

    std::vector<std::pair<double, double>> dup = {{0.0, 1.0}, {0.0, 2.0}};
    CHECK_THROWS_AS(holder_seminorm(dup, lin, 0), std::invalid_argument);
}

TEST_CASE("holder seminorm of |x|^1.5 derivative samples") {
    // D^1 |x|^1.5 = 1.5 sqrt(|x|) sgn(x): {-1.5, 0, 1.5} on {-1, 0, 1}.
    // Brute force over the three pairs with w = sqrt: the (-1, 1) pair gives
    // 3 / sqrt(2), which beats the adjacent pairs' 1.5.
    const auto pow_half = ModulusOfContinuity::power(0.5, 10.0);
    std::vector<std::pair<double, double>> vals = {{-1.0, -1.5}, {0.0, 0.0}, {1.0, 1.5}};
    CHECK(holder_seminorm(vals, pow_half, 1) == doctest::Approx(3.0 / std::sqrt(2.0)));
}
