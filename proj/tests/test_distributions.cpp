#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gravitas/distributions.hpp"
#include "gravitas/error.hpp"
#include "oracles.hpp"

using namespace gravitas;
using econ::ChiSquared;
using econ::FisherF;
using econ::StudentT;
using econ::tail_probability;

TEST_CASE("chi-squared with two degrees of freedom has the closed-form tail") {
    // Q(x) = exp(-x/2) exactly for df 2.
    CHECK(tail_probability(ChiSquared{2}, 0.0) == doctest::Approx(1.0));
    for (double x : {0.1, 1.0, 2.5, 5.9915, 11.0, 30.0})
        CHECK(tail_probability(ChiSquared{2}, x) ==
              doctest::Approx(std::exp(-x / 2.0)).epsilon(1e-12));
    // The conventional 95th percentile: upper tail 0.05 at x = -2 ln(0.05).
    CHECK(tail_probability(ChiSquared{2}, -2.0 * std::log(0.05)) ==
          doctest::Approx(0.05).epsilon(1e-12));
    // At the four-digit quantile 5.9915 the closed form gives 0.04999911...
    CHECK(tail_probability(ChiSquared{2}, 5.9915) ==
          doctest::Approx(0.0499991136856).epsilon(1e-9));
}

TEST_CASE("chi-squared tail matches the quadrature oracle on a grid") {
    const std::vector<double> dfs{1, 2, 3, 5, 10, 50};
    for (double df : dfs) {
        for (int i = 1; i <= 30; ++i) {
            const double x = df * 0.12 * i;  // spans deep into both tails
            const double got = tail_probability(ChiSquared{df}, x);
            const double want = oracles::chi_squared_upper(df, x);
            CHECK(std::fabs(got - want) < 1e-8);
        }
    }
}

TEST_CASE("F tail matches the quadrature oracle on a grid") {
    const std::vector<std::pair<double, double>> dfs{{1, 10}, {2, 10}, {2, 5067}, {5, 20},
                                                     {10, 2}};
    for (auto [d1, d2] : dfs) {
        for (int i = 1; i <= 30; ++i) {
            const double x = 0.2 * i;
            const double got = tail_probability(FisherF{d1, d2}, x);
            const double want = oracles::fisher_f_upper(d1, d2, x);
            CHECK(std::fabs(got - want) < 1e-8);
        }
    }
}

TEST_CASE("Student-t tail matches the quadrature oracle on a grid") {
    const std::vector<double> dfs{1, 2, 5, 30, 200, 5067};
    for (double df : dfs) {
        for (int i = 0; i < 30; ++i) {
            const double x = -4.5 + 0.3 * i;  // covers both signs
            const double got = tail_probability(StudentT{df}, x);
            const double want = oracles::student_t_upper(df, x);
            CHECK(std::fabs(got - want) < 1e-8);
        }
    }
}

TEST_CASE("frozen reference values") {
    // F(2,10) at 5.0: exactly (1 + x)^(-5) form collapses to 1/32.
    CHECK(tail_probability(FisherF{2, 10}, 5.0) == doctest::Approx(0.03125).epsilon(1e-10));
    // chi-squared(1) at 6.25, used by the Hausman worked example.
    CHECK(tail_probability(ChiSquared{1}, 6.25) ==
          doctest::Approx(0.0124193306516).epsilon(1e-8));
    // t(5) at 2.0.
    CHECK(tail_probability(StudentT{5}, 2.0) ==
          doctest::Approx(0.0509697394149).epsilon(1e-8));
}

TEST_CASE("large-df Student-t approaches the normal tail") {
    const double got = tail_probability(StudentT{1e6}, 1.96);
    CHECK(std::fabs(got - 0.025) < 1e-4);
    CHECK(std::fabs(got - oracles::normal_upper(1.96)) < 1e-6);
}

TEST_CASE("tails are monotone nonincreasing in x") {
    const std::vector<double> grid{0.0, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 40.0};
    double prev = 2.0;
    for (double x : grid) {
        const double p = tail_probability(ChiSquared{7}, x);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
    prev = 2.0;
    for (double x : grid) {
        const double p = tail_probability(FisherF{3, 9}, x);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
    prev = 2.0;
    for (double x : {-3.0, -1.0, 0.0, 0.7, 1.5, 3.0, 10.0}) {
        const double p = tail_probability(StudentT{11}, x);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
}

TEST_CASE("large df stays within absolute accuracy") {
    for (double x : {9500.0, 9900.0, 10000.0, 10100.0, 10500.0}) {
        const double got = tail_probability(ChiSquared{10000}, x);
        const double want = oracles::chi_squared_upper(10000, x);
        CHECK(std::fabs(got - want) < 1e-10);
    }
}

TEST_CASE("boundary behaviour") {
    CHECK(tail_probability(ChiSquared{3}, -1.0) == doctest::Approx(1.0));
    CHECK(tail_probability(FisherF{3, 7}, -0.5) == doctest::Approx(1.0));
    CHECK(tail_probability(StudentT{4}, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("invalid degrees of freedom raise InvalidDistribution") {
    try {
        tail_probability(ChiSquared{0}, 1.0);
        FAIL("expected InvalidDistribution");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::InvalidDistribution);
    }
    CHECK_THROWS_AS(tail_probability(FisherF{2, -1}, 1.0), Error);
    CHECK_THROWS_AS(tail_probability(StudentT{-3}, 1.0), Error);
}

TEST_CASE("variant dispatch matches the overloads") {
    const econ::Distribution d1 = ChiSquared{4};
    const econ::Distribution d2 = FisherF{2, 8};
    const econ::Distribution d3 = StudentT{9};
    CHECK(tail_probability(d1, 2.0) == tail_probability(ChiSquared{4}, 2.0));
    CHECK(tail_probability(d2, 2.0) == tail_probability(FisherF{2, 8}, 2.0));
    CHECK(tail_probability(d3, 2.0) == tail_probability(StudentT{9}, 2.0));
}
