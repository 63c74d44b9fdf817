#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "nlfp/core.hpp"
#include "nlfp/verify.hpp"

using namespace nlfp;

TEST_SUITE("core") {

TEST_CASE("levy params carry consistent derived constants") {
    for (double a : {0.3, 1.0, 1.5, 1.9}) {
        const LevyParams p(a, 0.7, 0.2);
        CHECK(std::abs(p.c_alpha - c_alpha(StabilityIndex(a))) < 1e-12);
        CHECK(std::abs(p.zeta_am1 - riemann_zeta(a - 1.0)) < 1e-12);
    }
    CHECK_THROWS_AS(LevyParams(1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(LevyParams(1.0, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(LevyParams(2.5, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("absorbing grid on (-1, 1) with h = 0.5") {
    const Grid g = build_grid(Absorbing{-1.0, 1.0}, 0.5);
    CHECK(g.J() == 2);
    REQUIRE(g.size() == 5);
    const double expect[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (std::size_t i = 0; i < 5; ++i) CHECK(g.x(i) == expect[i]);
    CHECK(g.absorbing());
}

TEST_CASE("natural grid resolution") {
    const Grid g = build_grid(Natural{50.0}, 0.001);
    CHECK(g.J() == 50000);
    CHECK(std::abs(g.x(0) + 50.0) < 1e-14 * 50.0);
    CHECK(std::abs(g.x(g.size() - 1) - 50.0) < 1e-14 * 50.0);
    CHECK_FALSE(g.absorbing());
}

TEST_CASE("grid rejects bad spacing and conditions") {
    CHECK_THROWS_AS(build_grid(Absorbing{-1.0, 1.0}, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(Absorbing{-1.0, 1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(Absorbing{1.0, -1.0}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(Absorbing{0.0, 1.0}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(Natural{0.5}, 0.1), std::invalid_argument);
    CHECK_NOTHROW(build_grid(Absorbing{-4.0, 4.0}, 0.01));
}

TEST_CASE("node reconstruction hits the endpoints") {
    for (double h : {0.1, 0.05, 0.025, 0.0125, 0.001}) {
        for (double B : {1.0, 2.0, 10.0}) {
            const Grid g = build_grid(Natural{B}, h);
            CHECK(std::abs(g.x(0) + B) <= 1e-14 * B);
            CHECK(std::abs(g.x(g.size() - 1) - B) <= 1e-14 * B);
        }
    }
}

TEST_CASE("index_of finds nearest nodes") {
    const Grid g = build_grid(Natural{1.0}, 0.1);
    CHECK(g.index_of(0.1) == 11);
    CHECK(g.index_of(-1.0) == 0);
    CHECK(g.index_of(5.0) == g.size() - 1);
    CHECK(g.index_of(-7.0) == 0);
}

TEST_CASE("sample_initial examples") {
    const auto u = sample_initial(Uniform{}, build_grid(Absorbing{-1.0, 1.0}, 0.5));
    CHECK(u.time == 0.0);
    for (double v : u.values) CHECK(v == 0.5);

    const auto c = sample_initial(CauchySeed{0.01}, build_grid(Natural{2.0}, 0.1));
    CHECK(c.time == 0.01);
    CHECK(c.values[c.grid.index_of(0.0)] == doctest::Approx(100.0 / std::numbers::pi).epsilon(1e-14));

    const auto gsn = sample_initial(GaussianNormalized{20.0, 0.0}, build_grid(Natural{50.0}, 0.001));
    CHECK(std::abs(mass_integral(gsn) - 1.0) < 1e-6);

    const auto gp = sample_initial(GaussianWide{}, build_grid(Natural{1.0}, 0.5));
    CHECK(gp.values[1] == doctest::Approx(std::sqrt(40.0 / std::numbers::pi) * std::exp(-0.25 / 40.0)));
}

TEST_CASE("built-in profiles are even") {
    const Grid g = build_grid(Natural{3.0}, 0.01);
    for (const InitialProfile& prof :
         {InitialProfile{GaussianWide{}}, InitialProfile{GaussianNormalized{0.3, 0.0}}, InitialProfile{Uniform{}},
          InitialProfile{CauchySeed{0.05}}}) {
        const auto p = sample_initial(prof, g);
        const std::size_t n = p.size();
        for (std::size_t i = 0; i < n; ++i) CHECK(p.values[i] == p.values[n - 1 - i]);
    }
}

TEST_CASE("enforce_condition zeroes absorbing ends only") {
    auto a = sample_initial(Uniform{}, build_grid(Absorbing{-1.0, 1.0}, 0.25));
    enforce_condition(a);
    CHECK(a.values.front() == 0.0);
    CHECK(a.values.back() == 0.0);
    CHECK(a.values[1] == 0.5);
    auto n = sample_initial(Uniform{}, build_grid(Natural{1.0}, 0.25));
    enforce_condition(n);
    CHECK(n.values.front() == 0.5);
}

TEST_CASE("drift fields and Lax-Friedrichs speeds") {
    const Grid g = build_grid(Natural{4.0}, 0.01);
    const auto ou = make_drift(DriftKind::OrnsteinUhlenbeck, g);
    CHECK(ou.lf_speed == doctest::Approx(4.0));
    const auto dw = make_drift(DriftKind::DoubleWell, g);
    CHECK(dw.lf_speed == doctest::Approx(60.0));
    const auto dw_small = make_drift(DriftKind::DoubleWell, build_grid(Absorbing{-1.0, 1.0}, 0.01));
    CHECK(dw_small.lf_speed == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))));
    // The analytic speed bounds every nodal value.
    for (double f : dw_small.nodal_values) CHECK(std::abs(f) <= dw_small.lf_speed + 1e-15);
    const auto z = make_drift(DriftKind::Zero, g);
    CHECK(z.lf_speed == 0.0);
}

TEST_CASE("tabulated drift") {
    const Grid g = build_grid(Natural{1.0}, 0.25);
    DriftTable t{{-1.0, 0.0, 1.0}, {2.0, 0.0, -4.0}};
    const auto d = make_drift(t, g);
    CHECK(d.nodal_values[0] == doctest::Approx(2.0));
    CHECK(d.nodal_values[2] == doctest::Approx(1.0));
    CHECK(d.nodal_values[6] == doctest::Approx(-2.0));
    CHECK(d.lf_speed == doctest::Approx(4.0));
    CHECK_THROWS_AS(make_drift(DriftTable{{-0.5, 1.0}, {0.0, 0.0}}, g), std::invalid_argument);
    CHECK_THROWS_AS(make_drift(DriftTable{{1.0, -1.0}, {0.0, 0.0}}, g), std::invalid_argument);
    CHECK(table_value(t, 5.0) == -4.0);
}

}
