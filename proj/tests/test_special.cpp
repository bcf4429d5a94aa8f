#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <fslp/special.hpp>

using fslp::ln_beta;
using fslp::ln_gamma;
using fslp::rgamma;

namespace {
double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("ln_gamma at known points") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_gamma(0.5) == doctest::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-14));
    CHECK(ln_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-14));
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-3.2), std::domain_error);
}

TEST_CASE("ln_gamma accuracy against the C library over [1e-3, 1e3]") {
    // log-spaced grid
    for (int i = 0; i <= 600; ++i) {
        const double x = std::pow(10.0, -3.0 + 6.0 * i / 600.0);
        CHECK(rel_err(ln_gamma(x), std::lgamma(x)) <= 1e-13);
    }
}

TEST_CASE("rgamma at known points") {
    CHECK(rgamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rgamma(-1.0) == 0.0);
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(-7.0) == 0.0);
    CHECK(rgamma(-0.5) == doctest::Approx(-1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-14));
}

TEST_CASE("ln_beta at known points") {
    CHECK(ln_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_beta(2.0, 2.0) == doctest::Approx(std::log(1.0 / 6.0)).epsilon(1e-14));
    CHECK(ln_beta(0.5, 0.5) == doctest::Approx(std::log(M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(ln_beta(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(ln_beta(1.0, -2.0), std::domain_error);
}

TEST_CASE("gamma recurrence Gamma(x+1) = x Gamma(x)") {
    for (int i = 0; i <= 499; ++i) {
        const double x = 0.1 + (50.0 - 0.1) * i / 499.0;
        const double lhs = std::exp(ln_gamma(x + 1.0));
        const double rhs = x * std::exp(ln_gamma(x));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("rgamma(x) * Gamma(x) = 1 on (0, 50]") {
    for (int i = 1; i <= 500; ++i) {
        const double x = 50.0 * i / 500.0;
        CHECK(rgamma(x) * std::exp(ln_gamma(x)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("reflection: rgamma(x) rgamma(1-x) = sin(pi x)/pi") {
    for (int i = 0; i <= 1000; ++i) {
        const double x = -5.0 + 10.0 * i / 1000.0;
        const double lhs = rgamma(x) * rgamma(1.0 - x);
        const double rhs = std::sin(M_PI * x) / M_PI;
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}
