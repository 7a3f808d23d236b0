#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "quadbound/coefficients.hpp"
#include "quadbound/error.hpp"

using namespace quadbound;

namespace {

double grid_value(int i) { return i / 20.0; }

double oracle_a2(double theta, double alpha) {
    return oracle::integral([&](double t) { return std::abs(t - theta) * oracle::tpow(t, alpha); },
                            0.0, 1.0, {theta});
}

double oracle_a4(double theta, double alpha) {
    return oracle::integral(
        [&](double t) { return std::abs(1.0 - theta - t) * oracle::tpow(t, alpha); }, 0.0, 1.0,
        {1.0 - theta});
}

double oracle_e(double x, double y, double alpha, double m) {
    return oracle::integral(
        [&](double t) { return oracle::tpow(t, alpha) * x + m * (1.0 - oracle::tpow(t, alpha)) * y; },
        0.0, 1.0);
}

} // namespace

TEST_CASE("a1 closed values") {
    CHECK(a1(0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(a1(2.0 / 3.0) - 5.0 / 18.0) <= 1e-12);
    CHECK(std::abs(a1(0.0) - 0.5) <= 1e-12);
    CHECK_THROWS_AS(a1(-0.1), ParameterError);
    CHECK_THROWS_AS(a1(1.5), ParameterError);
    for (int i = 0; i <= 20; ++i) {
        const double v = a1(grid_value(i));
        CHECK(v >= 0.25 - 1e-15);
        CHECK(v <= 0.5 + 1e-15);
    }
}

TEST_CASE("weight_moments worked values") {
    SUBCASE("theta = 1 leaves the (1 - t) t^alpha integral") {
        for (double alpha : {0.0, 0.3, 1.0}) {
            const WeightMoments w = weight_moments(1.0, alpha);
            CHECK(std::abs(w.a2 - 1.0 / ((alpha + 1.0) * (alpha + 2.0))) <= 1e-12);
        }
    }
    SUBCASE("theta = 2/3, alpha = 1") {
        // Frozen from oracle_a2 / oracle_a4 and the reflected counterparts.
        const WeightMoments w = weight_moments(2.0 / 3.0, 1.0);
        CHECK(std::abs(w.a2 - 8.0 / 81.0) <= 1e-12);
        CHECK(std::abs(w.a3 - 29.0 / 162.0) <= 1e-12);
        CHECK(std::abs(w.a4 - 29.0 / 162.0) <= 1e-12);
        CHECK(std::abs(w.a5 - 8.0 / 81.0) <= 1e-12);
        CHECK(std::abs(oracle_a2(2.0 / 3.0, 1.0) - 8.0 / 81.0) <= 1e-12);
        CHECK(std::abs(oracle_a4(2.0 / 3.0, 1.0) - 29.0 / 162.0) <= 1e-12);
    }
    SUBCASE("theta = 0, alpha = 1") {
        const WeightMoments w = weight_moments(0.0, 1.0);
        CHECK(std::abs(w.a2 - 1.0 / 3.0) <= 1e-12);
        CHECK(std::abs(w.a3 - 1.0 / 6.0) <= 1e-12);
    }
    CHECK_THROWS_AS(weight_moments(0.5, 1.5), ParameterError);
    CHECK_THROWS_AS(weight_moments(-0.5, 0.5), ParameterError);
}

TEST_CASE("weight_moments invariants on the 21x21 grid") {
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double theta = grid_value(i);
            const double alpha = grid_value(j);
            CAPTURE(theta);
            CAPTURE(alpha);
            const WeightMoments w = weight_moments(theta, alpha);
            const WeightMoments r = weight_moments(1.0 - theta, alpha);
            CHECK(std::abs(w.a2 + w.a3 - a1(theta)) <= 1e-12);
            CHECK(std::abs(w.a4 + w.a5 - a1(theta)) <= 1e-12);
            CHECK(std::abs(w.a4 - r.a2) <= 1e-12);
            CHECK(std::abs(w.a5 - r.a3) <= 1e-12);
            for (double v : {w.a2, w.a3, w.a4, w.a5})
                CHECK(v >= -1e-15);
            CHECK(std::abs(w.a2 - oracle_a2(theta, alpha)) <= 1e-9);
            CHECK(std::abs(w.a4 - oracle_a4(theta, alpha)) <= 1e-9);
        }
    }
}

TEST_CASE("holder_factor") {
    for (double p : {1.5, 2.0, 3.0, 7.0})
        CHECK(std::abs(holder_factor(0.5, p) - std::pow(2.0, -p) / (p + 1.0)) <= 1e-15);
    for (double p : {1.0, 1.25, 2.0, 4.0}) {
        const double closed = (std::pow(2.0, p + 1.0) + 1.0) / (std::pow(3.0, p + 1.0) * (p + 1.0));
        CHECK(std::abs(holder_factor(2.0 / 3.0, p) - closed) <= 1e-15);
    }
    CHECK(std::abs(holder_factor(2.0 / 3.0, 1.0) - 5.0 / 18.0) <= 1e-12);
    for (int i = 0; i <= 20; ++i)
        CHECK(std::abs(holder_factor(grid_value(i), 1.0) - a1(grid_value(i))) <= 1e-12);
    for (double theta : {0.0, 0.3, 2.0 / 3.0, 1.0})
        CHECK(std::abs(holder_factor(theta, 1.0) - a1(theta)) <= 1e-12);
    for (double theta : {0.1, 0.5, 0.9}) {
        for (double p : {1.5, 3.0}) {
            const double num = oracle::integral(
                [&](double t) { return std::pow(std::abs(t - theta), p); }, 0.0, 1.0, {theta});
            CHECK(std::abs(holder_factor(theta, p) - num) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(holder_factor(0.5, 0.0), ParameterError);
    CHECK_THROWS_AS(holder_factor(0.5, -2.0), ParameterError);
}

TEST_CASE("e_coeff") {
    CHECK(std::abs(e_coeff(3.0, 5.0, 1.0, 1.0) - 4.0) <= 1e-15);
    CHECK(e_coeff(3.0, 5.0, 0.0, 0.7) == 3.0);
    CHECK(std::abs(e_coeff(2.0, 4.0, 0.5, 0.5) - 2.0) <= 1e-15);
    CHECK(std::abs(oracle_e(2.0, 4.0, 0.5, 0.5) - 2.0) <= 1e-10);
    CHECK_THROWS_AS(e_coeff(-1.0, 1.0, 0.5, 0.5), ParameterError);
    CHECK_THROWS_AS(e_coeff(1.0, -1.0, 0.5, 0.5), ParameterError);

    for (int i = 0; i <= 20; ++i) {
        for (double m : {0.25, 0.5, 1.0}) {
            const double alpha = grid_value(i);
            const double x = 1.7;
            const double y = 0.4;
            CHECK(std::abs(e_coeff(x, y, alpha, m) - oracle_e(x, y, alpha, m)) <= 1e-9);
        }
    }
}
