#pragma once

#include <functional>
#include <span>

#include "nlfp/core.hpp"

namespace nlfp {

struct ErrorReport {
    double max_abs = 0.0;  ///< max_j |P_j - p(x_j)|
    double rel_l2 = 0.0;   ///< ||P - p||_2 / ||p||_2 over the nodes
    double at_time = 0.0;
};

/// Density of the Cauchy law with scale t: t / (pi (t^2 + x^2)).
double cauchy_exact(double x, double t);

/// Compares a field with an exact solution p(x, t) at the field's time.
ErrorReport error_report(const DensityField& p, const std::function<double(double, double)>& exact);

/// log2 |e(h) / e(h/2)|.
double observed_order(double e_h, double e_h2);

/// (1/3) P(L) - 2 P(2L) + (8/3) P(4L): removes the 1/L and 1/L^2 terms.
double richardson_domain(double p_L, double p_2L, double p_4L);

/// Trapezoidal integral of the nodal values over the grid.
double mass_integral(const DensityField& p);

/// Least-squares slope of log P against log x over nodes with x in [x_lo, x_hi].
double tail_slope(const DensityField& p, double x_lo, double x_hi);

/// Ordinary least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

}  // namespace nlfp
