#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "nlfp/specfun.hpp"

using namespace nlfp;

TEST_SUITE("specfun") {

TEST_CASE("stability index accepts only the open interval") {
    CHECK_NOTHROW(StabilityIndex(1e-9));
    CHECK_NOTHROW(StabilityIndex(1.999));
    CHECK_THROWS_AS(StabilityIndex(0.0), std::invalid_argument);
    CHECK_THROWS_AS(StabilityIndex(2.0), std::invalid_argument);
    CHECK_THROWS_AS(StabilityIndex(2.5), std::invalid_argument);
    CHECK_THROWS_AS(StabilityIndex(std::nan("")), std::invalid_argument);
}

TEST_CASE("gamma special values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    // Gamma(1.5) = 0.5 Gamma(0.5)
    CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("gamma recurrence") {
    for (double x = 0.01; x <= 1.0; x += 0.0137) {
        const double lhs = gamma_fn(x + 1.0);
        CHECK(std::abs(lhs - x * gamma_fn(x)) < 1e-10 * lhs);
    }
}

TEST_CASE("zeta special values") {
    CHECK(std::abs(riemann_zeta(0.0) + 0.5) < 1e-13);
    CHECK(std::abs(riemann_zeta(-1.0) + 1.0 / 12.0) < 1e-13);
    CHECK(std::abs(riemann_zeta(-2.0)) < 1e-13);  // trivial zero
    CHECK(std::abs(riemann_zeta(-3.0) - 1.0 / 120.0) < 1e-13);
    CHECK(std::abs(riemann_zeta(0.5) + 1.4603545088095868) < 1e-12);
    CHECK_THROWS_AS(riemann_zeta(1.0), std::domain_error);
    CHECK_THROWS_AS(riemann_zeta(3.0), std::domain_error);
}

TEST_CASE("zeta agrees with the standard library on [-3, 1)") {
    // Independent implementation shipped with libstdc++.
    for (double s = -3.0; s < 0.999; s += 0.0173) {
        const double ref = std::riemann_zeta(s);
        CHECK(std::abs(riemann_zeta(s) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("zeta is negative on (-1, 1)") {
    for (double s = -0.99; s < 0.999; s += 0.01) CHECK(riemann_zeta(s) < 0.0);
}

TEST_CASE("c_alpha closed forms") {
    CHECK(c_alpha(StabilityIndex(1.0)) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-13));
    CHECK(c_alpha(StabilityIndex(0.5)) ==
          doctest::Approx(0.5 / (std::sqrt(2.0) * std::sqrt(std::numbers::pi))).epsilon(1e-13));
    // Gamma(1.25) / Gamma(0.25) = 0.25
    const double a = 1.5;
    const double expect = a / (std::pow(2.0, 1.0 - a) * std::sqrt(std::numbers::pi)) * 0.25;
    CHECK(c_alpha(StabilityIndex(a)) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(0.2992067).epsilon(1e-6));
    for (double al = 0.05; al < 2.0; al += 0.05) CHECK(c_alpha(StabilityIndex(al)) > 0.0);
}

TEST_CASE("maximum-principle threshold") {
    CHECK(mp_threshold(StabilityIndex(1.0), 1.0) == doctest::Approx(std::numbers::pi / 5.0).epsilon(1e-13));
    CHECK(std::abs(mp_threshold(StabilityIndex(1.99), 1.0) - 0.5) < 0.02);
    CHECK(std::abs(mp_threshold(StabilityIndex(0.01), 1.0) - 1.0) < 0.02);
    CHECK_THROWS_AS(mp_threshold(StabilityIndex(1.0), 0.0), std::domain_error);
}

TEST_CASE("threshold decreases in alpha and lies in (0.5, 1)") {
    double prev = 2.0;
    for (int k = 1; k <= 39; ++k) {
        const double t = mp_threshold(StabilityIndex(0.05 * k), 1.0);
        CHECK(t < prev);
        CHECK(t > 0.5);
        CHECK(t < 1.0);
        prev = t;
    }
}

TEST_CASE("threshold scales as 1/eps") {
    for (double a : {0.3, 1.0, 1.7}) {
        const double base = mp_threshold(StabilityIndex(a), 1.0);
        for (double eps : {0.1, 0.5, 3.0}) {
            CHECK(std::abs(mp_threshold(StabilityIndex(a), eps) * eps - base) < 1e-12 * base);
        }
    }
}

}
