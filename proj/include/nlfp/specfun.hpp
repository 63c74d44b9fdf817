#pragma once

#include <stdexcept>

namespace nlfp {

/// Stability index of a symmetric alpha-stable law, restricted to the open
/// interval (0, 2).
class StabilityIndex {
public:
    explicit StabilityIndex(double alpha);

    double value() const noexcept { return alpha_; }
    operator double() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Gamma function for positive real arguments.
/// Throws std::domain_error for x <= 0.
double gamma_fn(double x);

/// Real Riemann zeta function for s < 1.
///
/// For 0 <= s < 1 the Dirichlet eta series is summed with Borwein's
/// acceleration and converted through eta(s) = (1 - 2^(1-s)) zeta(s).
/// For s < 0 the functional equation maps the argument into (1, inf),
/// where the same accelerated series is well conditioned.
/// Throws std::domain_error for s >= 1.
double riemann_zeta(double s);

/// Normalising constant of the jump measure C_a |y|^-(1+a) dy, chosen so the
/// generator is exactly -(-Laplacian)^(a/2).
double c_alpha(StabilityIndex alpha);

/// Upper bound on dt / h^alpha under which forward Euler on the pure-jump
/// scheme keeps every nodal value inside its initial range:
///   1 / (2 eps C_a [1 + 1/a - zeta(a - 1)]).
double mp_threshold(StabilityIndex alpha, double eps);

}  // namespace nlfp
