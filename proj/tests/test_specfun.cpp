#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nullstate/errors.hpp"
#include "nullstate/specfun.hpp"
#include "oracles.hpp"

using namespace nullstate;

TEST_SUITE_BEGIN("specfun");

TEST_CASE("2f1 at z=0 is the empty product") {
    CHECK(gauss_2f1(0.3, 0.7, 1.1, 0.0) == 1.0);
}

TEST_CASE("2f1(1,1;2|z) = -ln(1-z)/z") {
    for (double z : {0.5, -0.8, 0.25, 0.75, 0.9, 0.99}) {
        const double expected = -std::log1p(-z) / z;
        CHECK(gauss_2f1(1.0, 1.0, 2.0, z) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(1.38629436111989).epsilon(1e-13));
}

TEST_CASE("cardy expression at the self-dual modulus") {
    const double pref =
        3.0 * std::tgamma(2.0 / 3.0) / std::pow(std::tgamma(1.0 / 3.0), 2);
    const double p_half = pref * std::cbrt(0.5) * gauss_2f1(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, 0.5);
    CHECK(p_half == doctest::Approx(0.5).epsilon(1e-12));
    // duality P(m) + P(1-m) = 1 exercises both series and connection branches
    for (double m : {0.1, 0.31, 0.62, 0.9}) {
        const double pm = pref * std::cbrt(m) * gauss_2f1(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, m);
        const double pc =
            pref * std::cbrt(1.0 - m) * gauss_2f1(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, 1.0 - m);
        CHECK(pm + pc == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("parameter symmetry a <-> b") {
    std::mt19937 gen(20240811);
    std::uniform_real_distribution<double> par(-2.5, 3.5);
    std::uniform_real_distribution<double> arg(-3.0, 0.999);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = par(gen);
        const double b = par(gen);
        double c = par(gen);
        if (std::abs(c - std::round(c)) < 0.05 && c < 0.5) c += 0.5; // avoid poles
        const double z = arg(gen);
        const double f1 = gauss_2f1(a, b, c, z);
        const double f2 = gauss_2f1(b, a, c, z);
        CHECK(f1 == doctest::Approx(f2).epsilon(1e-12));
    }
}

TEST_CASE("agreement with the Euler-integral quadrature oracle") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> ua(-2.0, 2.5);
    std::uniform_real_distribution<double> ub(1.0, 3.0);
    std::uniform_real_distribution<double> uc(1.0, 2.5);
    std::uniform_real_distribution<double> uz(-2.0, 0.95);
    for (int trial = 0; trial < 60; ++trial) {
        const double a = ua(gen);
        const double b = ub(gen);
        const double c = b + uc(gen);
        const double z = uz(gen);
        const double expected = oracles::hyp2f1_quadrature(a, b, c, z);
        CHECK(gauss_2f1(a, b, c, z) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("logarithmic branch: integer c-a-b") {
    // c-a-b = 0: 2F1(1/2,1/2;1|m) = 2K(m)/pi
    for (double m : {0.55, 0.8, 0.95}) {
        const double expected = 2.0 * elliptic_k(m) / std::numbers::pi;
        CHECK(gauss_2f1(0.5, 0.5, 1.0, m) == doctest::Approx(expected).epsilon(1e-12));
    }
    // c-a-b = 1: 2F1(-1/2,1/2;1|m) = 2E(m)/pi against direct quadrature
    for (double m : {0.6, 0.75, 0.9}) {
        const double expected = 2.0 * oracles::elliptic_e_quadrature(m) / std::numbers::pi;
        CHECK(gauss_2f1(-0.5, 0.5, 1.0, m) == doctest::Approx(expected).epsilon(1e-11));
    }
    // c-a-b = 2 with half-integer parameters (the kappa = 8/3 family) against
    // the Euler integral at the reflected argument via the quadrature oracle
    const double got = gauss_2f1(1.5, -0.5, 3.0, 0.7);
    const double expected = oracles::hyp2f1_quadrature(-0.5, 1.5, 3.0, 0.7);
    CHECK(got == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("terminating series is polynomial-exact for any z") {
    // 2F1(-2, b; c | z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
    auto poly = [](double b, double c, double z) {
        return 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
    };
    for (double z : {-5.0, 0.3, 0.9, 0.999}) {
        CHECK(gauss_2f1(-2.0, 0.7, 1.3, z) == doctest::Approx(poly(0.7, 1.3, z)).epsilon(1e-14));
    }
}

TEST_CASE("2f1 error paths") {
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 0.0, 0.3), parameter_error);
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, -3.0, 0.3), parameter_error);
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.5, 1.0), domain_error);
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.5, 2.5), domain_error);
}

TEST_CASE("elliptic K limits and symmetry point") {
    CHECK(elliptic_k(1e-14) == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));
    CHECK(elliptic_k(0.5) == doctest::Approx(elliptic_k(1.0 - 0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(elliptic_k(0.0), domain_error);
    CHECK_THROWS_AS(elliptic_k(1.0), domain_error);
    CHECK_THROWS_AS(elliptic_k(-0.2), domain_error);
}

TEST_CASE("elliptic K against the quadrature oracle") {
    CHECK(elliptic_k(0.9) == doctest::Approx(oracles::elliptic_k_quadrature(0.9)).epsilon(1e-12));
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> um(0.01, 0.99);
    for (int trial = 0; trial < 40; ++trial) {
        const double m = um(gen);
        CHECK(elliptic_k(m) ==
              doctest::Approx(oracles::elliptic_k_quadrature(m)).epsilon(1e-10));
    }
}

TEST_CASE("K increasing, aspect ratio decreasing on a 100-point grid") {
    double prev_k = 0.0;
    double prev_r = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
        const double m = i / 101.0;
        const double k = elliptic_k(m);
        const double r = elliptic_k(1.0 - m) / k;
        CHECK(k > prev_k);
        CHECK(r < prev_r);
        prev_k = k;
        prev_r = r;
    }
}

TEST_CASE("digamma basics") {
    // psi(1) = -gamma, psi(1/2) = -gamma - 2 ln 2
    const double euler_gamma = 0.5772156649015328606;
    CHECK(digamma(1.0) == doctest::Approx(-euler_gamma).epsilon(1e-14));
    CHECK(digamma(0.5) ==
          doctest::Approx(-euler_gamma - 2.0 * std::log(2.0)).epsilon(1e-14));
    // recurrence psi(x+1) = psi(x) + 1/x at x = -0.5
    CHECK(digamma(0.5) == doctest::Approx(digamma(-0.5) + 1.0 / (-0.5)).epsilon(1e-13));
    CHECK_THROWS_AS(digamma(-3.0), parameter_error);
}

TEST_SUITE_END();
