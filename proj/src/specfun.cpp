#include "nlfp/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace nlfp {

StabilityIndex::StabilityIndex(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw std::invalid_argument("stability index alpha must lie in (0, 2), got " +
                                    std::to_string(alpha));
    }
}

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("gamma_fn: argument must be positive");
    }
    return std::tgamma(x);
}

namespace {

constexpr int kBorweinTerms = 40;

// d_k / d_n of Borwein's algorithm 2, minus one, with alternating sign folded in.
struct BorweinWeights {
    std::array<double, kBorweinTerms> w{};

    BorweinWeights() {
        const int n = kBorweinTerms;
        std::array<double, kBorweinTerms + 1> d{};
        double e = 1.0 / n;  // (n+i-1)! 4^i / ((n-i)! (2i)!) at i = 0
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            acc += e;
            d[i] = n * acc;
            e *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
        }
        for (int k = 0; k < n; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            w[k] = -sign * (d[k] - d[n]) / d[n];
        }
    }
};

// Dirichlet eta for s >= 0; absolute error ~ 3 (3 + sqrt 8)^-n.
double eta_borwein(double s) {
    static const BorweinWeights weights;
    double sum = 0.0;
    for (int k = kBorweinTerms - 1; k >= 0; --k) {
        sum += weights.w[k] * std::pow(k + 1.0, -s);
    }
    return sum;
}

double zeta_from_eta(double s) {
    return eta_borwein(s) / -std::expm1((1.0 - s) * std::numbers::ln2);
}

}  // namespace

double riemann_zeta(double s) {
    if (!(s < 1.0)) {
        throw std::domain_error("riemann_zeta: argument must be < 1");
    }
    if (s >= 0.0) {
        return zeta_from_eta(s);
    }
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    const double t = 1.0 - s;
    const double pi = std::numbers::pi;
    return std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(0.5 * pi * s) *
           std::tgamma(t) * zeta_from_eta(t);
}

double c_alpha(StabilityIndex alpha) {
    const double a = alpha.value();
    return a / (std::pow(2.0, 1.0 - a) * std::sqrt(std::numbers::pi)) *
           gamma_fn(0.5 * (1.0 + a)) / gamma_fn(1.0 - 0.5 * a);
}

double mp_threshold(StabilityIndex alpha, double eps) {
    if (!(eps > 0.0)) {
        throw std::domain_error("mp_threshold: noise intensity must be positive");
    }
    const double a = alpha.value();
    return 1.0 / (2.0 * eps * c_alpha(alpha) * (1.0 + 1.0 / a - riemann_zeta(a - 1.0)));
}

}  // namespace nlfp
