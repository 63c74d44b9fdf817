#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <doctest.h>

#include "nlfp/fft.hpp"
#include "nlfp/toeplitz.hpp"

using namespace nlfp;

namespace {

std::vector<cplx> dft(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j * k % n) / static_cast<double>(n);
            s += x[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_SUITE("fft") {

TEST_CASE("power-of-two helpers") {
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(64));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(96));
    CHECK(next_power_of_two(1) == 1);
    CHECK(next_power_of_two(5) == 8);
    CHECK(next_power_of_two(1024) == 1024);
    CHECK_THROWS(FftPlan(12));
}

TEST_CASE("complex FFT matches the direct DFT") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n01;
    for (std::size_t n : {1u, 2u, 4u, 8u, 32u, 256u}) {
        std::vector<cplx> x(n);
        for (auto& v : x) v = cplx(n01(rng), n01(rng));
        const FftPlan plan(n);
        auto f = x;
        plan.forward(f);
        const auto ref = dft(x, -1);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(f[k] - ref[k]) < 1e-11 * static_cast<double>(n));
        plan.inverse(f);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(f[k] / static_cast<double>(n) - x[k]) < 1e-13);
    }
}

TEST_CASE("real FFT matches the complex transform") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n01;
    for (std::size_t m : {4u, 8u, 64u, 1024u}) {
        std::vector<double> x(m);
        for (auto& v : x) v = n01(rng);
        const RealFftPlan plan(m);
        std::vector<cplx> spec(plan.bins()), work(plan.half_size());
        plan.forward(x, spec, work);
        std::vector<cplx> xc(x.begin(), x.end());
        const auto ref = dft(xc, -1);
        for (std::size_t k = 0; k < plan.bins(); ++k) CHECK(std::abs(spec[k] - ref[k]) < 1e-10 * static_cast<double>(m));
        std::vector<double> back(m);
        plan.inverse(spec, back, work);
        for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(back[i] / (0.5 * static_cast<double>(m)) - x[i]) < 1e-12);
    }
}

}

TEST_SUITE("toeplitz") {

TEST_CASE("hand-computed products") {
    const SymmetricToeplitz id({1.0, 0.0, 0.0});
    const std::vector<double> v{3.0, -2.0, 5.0};
    CHECK(matvec_naive(id, v) == v);
    const auto fid = matvec_fft(id, v);
    CHECK(max_diff(fid, v) < 1e-14);

    const SymmetricToeplitz tri({2.0, 1.0, 0.0});
    const std::vector<double> ones{1.0, 1.0, 1.0};
    CHECK(matvec_naive(tri, ones) == std::vector<double>{3.0, 4.0, 3.0});
    CHECK(max_diff(matvec_fft(tri, ones), std::vector<double>{3.0, 4.0, 3.0}) < 1e-14);

    const SymmetricToeplitz swap({0.0, 1.0});
    CHECK(matvec_naive(swap, std::vector<double>{5.0, 7.0}) == std::vector<double>{7.0, 5.0});
    CHECK(max_diff(matvec_fft(swap, std::vector<double>{5.0, 7.0}), std::vector<double>{7.0, 5.0}) < 1e-14);

    const SymmetricToeplitz one({4.0});
    CHECK(max_diff(matvec_fft(one, std::vector<double>{2.5}), std::vector<double>{10.0}) < 1e-14);
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS(SymmetricToeplitz(std::vector<double>{}));
    CHECK_THROWS(SymmetricToeplitz({1.0, std::nan("")}));
    const SymmetricToeplitz t({1.0, 2.0});
    CHECK_THROWS(matvec_naive(t, std::vector<double>{1.0}));
    CHECK_THROWS(matvec_fft(t, std::vector<double>{1.0, 2.0, 3.0}));
}

TEST_CASE("fast product equals naive on random cases") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> size(1, 512);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = size(rng);
        std::vector<double> c(n), v(n);
        for (auto& x : c) x = u(rng);
        for (auto& x : v) x = u(rng);
        const SymmetricToeplitz t(c);
        CHECK(max_diff(matvec_fft(t, v), matvec_naive(t, v)) < 1e-10);
    }
}

TEST_CASE("N = 1000 with a decaying kernel") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> c(1000), v(1000);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = k == 0 ? 0.0 : std::pow(static_cast<double>(k), -2.0);
    for (auto& x : v) x = u(rng);
    const SymmetricToeplitz t(c);
    CHECK(max_diff(matvec_fft(t, v), matvec_naive(t, v)) < 1e-10);
}

TEST_CASE("linearity and symmetry of the bilinear form") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 300;
    std::vector<double> c(n), a(n), b(n), mix(n);
    for (auto& x : c) x = u(rng);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    const PreparedToeplitz p(SymmetricToeplitz{c});
    for (std::size_t i = 0; i < n; ++i) mix[i] = 2.5 * a[i] - 0.75 * b[i];
    const auto ta = p.apply(a), tb = p.apply(b), tm = p.apply(mix);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(tm[i] - (2.5 * ta[i] - 0.75 * tb[i])) < 1e-10);
    double ab = 0.0, ba = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ab += a[i] * tb[i];
        ba += b[i] * ta[i];
    }
    CHECK(std::abs(ab - ba) <= 1e-9 * std::max(std::abs(ab), 1.0));
}

TEST_CASE("prepared kernel reuse with shared scratch") {
    std::vector<double> c{0.0, 1.0, 0.5, 0.25, 0.125};
    const PreparedToeplitz p(SymmetricToeplitz{c});
    CHECK(p.embedding_size() == 16);
    auto scratch = p.make_scratch();
    std::vector<double> out(5);
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> v{1.0 * rep, 2.0, -1.0, 0.5, 4.0};
        p.apply(v, out, scratch);
        CHECK(max_diff(out, matvec_naive(SymmetricToeplitz{c}, v)) < 1e-13);
    }
}

}
