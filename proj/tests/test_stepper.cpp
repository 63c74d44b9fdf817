#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <doctest.h>

#include "direct_sum_oracle.hpp"
#include "nlfp/stepper.hpp"
#include "nlfp/verify.hpp"

using namespace nlfp;

namespace {

const Grid& scalar_grid() {
    static const Grid g = build_grid(Natural{1.0}, 1.0);  // 3 nodes
    return g;
}

RhsFn decay() {
    return [](std::span<const double> u, std::span<double> out) {
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = -u[i];
    };
}

double decay_error(Integrator mode, double dt) {
    DensityField p(scalar_grid(), std::vector<double>(3, 1.0), 0.0);
    const auto r = evolve(p, decay(), mode, dt, 1.0);
    return std::abs(r.values[0] - std::exp(-1.0));
}

}  // namespace

TEST_SUITE("stepper") {

TEST_CASE("select_dt examples") {
    const LevyParams one(1.0, 1.0, 0.0);
    const Grid g = build_grid(Natural{1.0}, 0.001);
    CHECK(select_dt(one, g, 1.0) == doctest::Approx(0.001 * std::numbers::pi / 5.0).epsilon(1e-12));
    CHECK(select_dt(one, g, 0.5) == doctest::Approx(0.5 * 0.001 * std::numbers::pi / 5.0).epsilon(1e-12));
    const LevyParams half(0.5, 1.0, 0.0);
    const Grid g2 = build_grid(Natural{1.0}, 0.01);
    CHECK(select_dt(half, g2, 0.5) == doctest::Approx(0.5 * 0.1 * mp_threshold(StabilityIndex(0.5), 1.0)).epsilon(1e-12));
    CHECK_THROWS(select_dt(one, g, 0.0));
    CHECK_THROWS(select_dt(one, g, 1.5));
}

TEST_CASE("composite bound with diffusion and drift") {
    const Grid g = build_grid(Natural{2.0}, 0.01);
    const LevyParams prm(1.5, 1.0, 2.0);
    const OperatorWorkspace ws(prm, g, make_drift(DriftKind::OrnsteinUhlenbeck, g));
    const double jump = select_dt(prm, g, 0.5);
    const double diff = 0.5 * 0.01 * 0.01 / (2.0 * ws.c_h());
    const double adv = 0.5 * 0.01 / 2.0;
    CHECK(select_dt(ws, 0.5) == doctest::Approx(std::min({jump, diff, adv})).epsilon(1e-14));
}

TEST_CASE("single steps on u' = -u") {
    DensityField p(scalar_grid(), std::vector<double>(3, 1.0), 0.0);
    const auto e = euler_step(p, decay(), 0.1);
    CHECK(e.values[0] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(e.time == doctest::Approx(0.1));
    const auto r = rk3_step(p, decay(), 0.1);
    // U1 = 0.9, U2 = 0.9525, U = 1/3 + 2/3 * 0.9525 - 2/3 * 0.1 * 0.9525
    const double by_hand = 1.0 / 3.0 + 2.0 / 3.0 * 0.9525 - 2.0 / 3.0 * 0.1 * 0.9525;
    CHECK(r.values[0] == doctest::Approx(by_hand).epsilon(1e-15));
    CHECK(std::abs(r.values[0] - std::exp(-0.1)) == doctest::Approx(4.1e-6).epsilon(0.05));
}

TEST_CASE("zero right-hand side is the identity") {
    RhsFn zero = [](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); };
    DensityField p(scalar_grid(), {0.3, -2.0, 7.0}, 0.0);
    for (auto mode : {Integrator::ForwardEuler, Integrator::TvdRk3}) {
        const auto r = evolve(p, zero, mode, 0.01, 1.0);
        for (std::size_t i = 0; i < 3; ++i) CHECK(r.values[i] == doctest::Approx(p.values[i]).epsilon(1e-15));
        CHECK(r.time == 1.0);
    }
    CHECK(euler_step(p, zero, 0.5).values == p.values);
}

TEST_CASE("observed orders of the integrators") {
    const double o_rk3 = std::log2(decay_error(Integrator::TvdRk3, 0.1) / decay_error(Integrator::TvdRk3, 0.05));
    const double o_eul =
        std::log2(decay_error(Integrator::ForwardEuler, 0.01) / decay_error(Integrator::ForwardEuler, 0.005));
    CHECK(std::abs(o_rk3 - 3.0) <= 0.2);
    CHECK(std::abs(o_eul - 1.0) <= 0.1);
}

TEST_CASE("non-finite values abort") {
    RhsFn bad = [](std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), std::numeric_limits<double>::quiet_NaN());
    };
    DensityField p(scalar_grid(), std::vector<double>(3, 1.0), 0.0);
    CHECK_THROWS_AS(euler_step(p, bad, 0.1), SolverError);
    CHECK_THROWS_AS(rk3_step(p, bad, 0.1), SolverError);
    CHECK_THROWS_AS(evolve(p, bad, Integrator::TvdRk3, 0.1, 1.0), SolverError);
}

TEST_CASE("step budget and argument checks") {
    DensityField p(scalar_grid(), std::vector<double>(3, 1.0), 0.0);
    CHECK_THROWS_AS(evolve(p, decay(), Integrator::TvdRk3, 1e-3, 1.0, {}, nullptr, 10), SolverError);
    CHECK_THROWS_AS(evolve(p, decay(), Integrator::TvdRk3, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(evolve(p, decay(), Integrator::TvdRk3, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("outputs are hit exactly and the final step is shortened") {
    DensityField p(scalar_grid(), std::vector<double>(3, 1.0), 0.0);
    std::vector<double> seen;
    OutputPlan plan{{0.0, 0.05, 0.123, 0.3}, [&](const DensityField& f) { seen.push_back(f.time); }};
    EvolveStats stats;
    const auto r = evolve(p, decay(), Integrator::TvdRk3, 0.04, 0.3, plan, &stats);
    REQUIRE(seen.size() == 4);
    CHECK(seen[0] == 0.0);
    CHECK(seen[1] == 0.05);
    CHECK(seen[2] == 0.123);
    CHECK(seen[3] == 0.3);
    CHECK(r.time == 0.3);
    CHECK(stats.dt == 0.04);
}

TEST_CASE("evolve with t_end equal to the start returns the field") {
    const Grid g = build_grid(Absorbing{-1.0, 1.0}, 0.25);
    const OperatorWorkspace ws(LevyParams(1.0, 1.0, 0.0), g, make_drift(DriftKind::Zero, g));
    const auto p = sample_initial(Uniform{}, g);
    const auto r = evolve(p, ws, StepControl{}, 0.0);
    CHECK(r.values == p.values);
}

TEST_CASE("one Euler step on the J = 2 absorbing problem") {
    const Grid g = build_grid(Absorbing{-1.0, 1.0}, 0.5);
    const LevyParams prm(1.0, 1.0, 0.0);
    const OperatorWorkspace ws(prm, g, make_drift(DriftKind::Zero, g));
    const DensityField p(g, {0.0, 0.0, 1.0, 0.0, 0.0}, 0.0);
    const oracle::Setup s{1.0, 1.0, 0.0, prm.c_alpha, prm.zeta_am1, 0.5, 2, true, std::vector<double>(5, 0.0), 0.0};
    const auto r = oracle::rhs(s, p.values);
    const auto e = euler_step(p, make_rhs(ws), 0.01);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(e.values[i] - (p.values[i] + 0.01 * r[i])) < 1e-14);
    CHECK(e.values.front() == 0.0);
    CHECK(e.values.back() == 0.0);
}

TEST_CASE("discrete maximum principle") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double a : {0.5, 1.0, 1.5}) {
        for (bool absorbing : {true, false}) {
            for (auto mode : {Integrator::ForwardEuler, Integrator::TvdRk3}) {
                const AuxCondition cond = absorbing ? AuxCondition{Absorbing{-1.0, 1.0}} : AuxCondition{Natural{1.0}};
                const Grid g = build_grid(cond, 0.05);
                const LevyParams prm(a, 1.0, 0.0);
                const OperatorWorkspace ws(prm, g, make_drift(DriftKind::Zero, g));
                StepControl ctrl;
                ctrl.dt = 0.99 * std::pow(g.h(), a) * mp_threshold(prm.alpha, 1.0);
                ctrl.mode = mode;
                for (int rep = 0; rep < 5; ++rep) {
                    DensityField p(g);
                    for (auto& v : p.values) v = 3.0 * u(rng);
                    enforce_condition(p);
                    const double M = *std::max_element(p.values.begin(), p.values.end());
                    const auto r = evolve(p, ws, ctrl, 200 * ctrl.dt * (1 - 1e-12));
                    for (double v : r.values) {
                        CHECK(v >= -1e-12);
                        CHECK(v <= M + 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("RK3 stages stay within the Euler bounds") {
    const Grid g = build_grid(Natural{1.0}, 0.05);
    const LevyParams prm(1.0, 1.0, 0.0);
    const OperatorWorkspace ws(prm, g, make_drift(DriftKind::Zero, g));
    const auto rhs = make_rhs(ws);
    const double dt = 0.99 * g.h() * mp_threshold(prm.alpha, 1.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    DensityField p(g);
    for (auto& v : p.values) v = u(rng);
    const double M = *std::max_element(p.values.begin(), p.values.end());
    const auto u1 = euler_step(p, rhs, dt);
    DensityField u2 = euler_step(u1, rhs, dt);
    for (std::size_t i = 0; i < u2.size(); ++i) u2.values[i] = 0.75 * p.values[i] + 0.25 * u2.values[i];
    for (const DensityField* stage : {&u1, static_cast<const DensityField*>(&u2)}) {
        for (double v : stage->values) {
            CHECK(v >= -1e-12);
            CHECK(v <= M + 1e-12);
        }
    }
}

TEST_CASE("absorbing uniform start keeps its maximum at the centre") {
    const Grid g = build_grid(Absorbing{-1.0, 1.0}, 0.02);
    const OperatorWorkspace ws(LevyParams(1.0, 1.0, 0.0), g, make_drift(DriftKind::Zero, g));
    StepControl ctrl;
    ctrl.dt = 0.5 * g.h();
    const auto r = evolve(sample_initial(Uniform{}, g), ws, ctrl, 2.5);
    const auto it = std::max_element(r.values.begin(), r.values.end());
    CHECK(static_cast<std::size_t>(it - r.values.begin()) == g.J());
}

TEST_CASE("short Cauchy evolution at h = 0.001") {
    const Grid g = build_grid(Natural{50.0}, 0.001);
    const OperatorWorkspace ws(LevyParams(1.0, 1.0, 0.0), g, make_drift(DriftKind::Zero, g));
    StepControl ctrl;
    ctrl.dt = 0.5 * g.h();
    const auto r = evolve(sample_initial(CauchySeed{0.01}, g), ws, ctrl, 0.05);
    const auto rep = error_report(r, [](double x, double t) { return cauchy_exact(x, t); });
    CHECK(rep.rel_l2 < 0.003);
}

}
