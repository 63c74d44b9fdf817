#pragma once
// Literal O(J^2) transcription of the semi-discrete scheme, evaluated in long
// double. Shares nothing with the library beyond the scalar constants.

#include <cmath>
#include <vector>

namespace oracle {

struct Setup {
    double alpha, eps, d, c_alpha, zeta_am1;
    double h;
    int J;
    bool absorbing;
    std::vector<double> f;  // drift at nodes, index j + J
    double lambda;          // Lax-Friedrichs speed
    double delta = 1e-6;
};

using ld = long double;

// Left-biased WENO3 derivative of phi (index j + J) at node j; phi vanishes at
// |j| >= J and beyond.
inline ld weno_plus(const std::vector<ld>& phi, int J, int j, ld h, ld delta) {
    auto at = [&](int k) -> ld { return std::abs(k) >= J ? 0.0L : phi[static_cast<std::size_t>(k + J)]; };
    auto dp = [&](int k) { return at(k + 1) - at(k); };
    auto dmdp = [&](int k) { return at(k + 1) - 2 * at(k) + at(k - 1); };
    const ld r = (delta + dmdp(j - 1) * dmdp(j - 1)) / (delta + dmdp(j) * dmdp(j));
    const ld w = 1.0L / (1.0L + 2.0L * r * r);
    return (dp(j - 1) + dp(j)) / (2 * h) - w / (2 * h) * (dp(j - 2) - 2 * dp(j - 1) + dp(j));
}

inline ld weno_minus(const std::vector<ld>& phi, int J, int j, ld h, ld delta) {
    auto at = [&](int k) -> ld { return std::abs(k) >= J ? 0.0L : phi[static_cast<std::size_t>(k + J)]; };
    auto dp = [&](int k) { return at(k + 1) - at(k); };
    auto dmdp = [&](int k) { return at(k + 1) - 2 * at(k) + at(k - 1); };
    const ld r = (delta + dmdp(j + 1) * dmdp(j + 1)) / (delta + dmdp(j) * dmdp(j));
    const ld w = 1.0L / (1.0L + 2.0L * r * r);
    return (dp(j - 1) + dp(j)) / (2 * h) - w / (2 * h) * (dp(j + 1) - 2 * dp(j) + dp(j - 1));
}

/// dP_j/dt for every node j = -J..J (returned in storage order).
inline std::vector<double> rhs(const Setup& s, const std::vector<double>& P) {
    const int J = s.J;
    const ld h = s.h, a = s.alpha;
    const ld epsc = static_cast<ld>(s.eps) * s.c_alpha;
    const ld Ch = static_cast<ld>(s.d) / 2 - epsc * s.zeta_am1 * std::pow(h, 2 - a);
    const ld B = h * J;
    auto p = [&](int j) -> ld {
        if (j < -J || j > J) return 0.0L;
        return P[static_cast<std::size_t>(j + J)];
    };

    std::vector<ld> fp(2 * J + 1), fm(2 * J + 1);
    for (int j = -J; j <= J; ++j) {
        const ld f = s.f[static_cast<std::size_t>(j + J)];
        fp[static_cast<std::size_t>(j + J)] = 0.5L * (f + s.lambda) * p(j);
        fm[static_cast<std::size_t>(j + J)] = 0.5L * (f - s.lambda) * p(j);
    }

    std::vector<double> out(2 * J + 1, 0.0);
    for (int j = -J; j <= J; ++j) {
        const bool boundary = std::abs(j) == J;
        if (s.absorbing && boundary) continue;
        ld v = Ch * (p(j - 1) - 2 * p(j) + p(j + 1)) / (h * h);
        if (!boundary) v -= weno_plus(fp, J, j, h, s.delta) + weno_minus(fm, J, j, h, s.delta);
        if (s.absorbing) {
            const ld x = h * j;
            v -= epsc / a * (std::pow(B + x, -a) + std::pow(B - x, -a)) * p(j);
        }
        ld sum = 0.0L;
        const int k_lo = -J - j, k_hi = J - j;
        for (int k = k_lo; k <= k_hi; ++k) {
            if (k == 0) continue;
            ld term = (p(j + k) - p(j)) / std::pow(std::abs(k * h), 1 + a);
            if (k == k_lo || k == k_hi) term *= 0.5L;
            sum += term;
        }
        v += epsc * h * sum;
        out[static_cast<std::size_t>(j + J)] = static_cast<double>(v);
    }
    return out;
}

}  // namespace oracle
