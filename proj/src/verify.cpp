#include "nlfp/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nlfp {

double cauchy_exact(double x, double t) {
    if (!(t > 0.0)) throw std::domain_error("cauchy_exact: t must be positive");
    return t / (std::numbers::pi * (t * t + x * x));
}

ErrorReport error_report(const DensityField& p, const std::function<double(double, double)>& exact) {
    ErrorReport r;
    r.at_time = p.time;
    double err2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double ref = exact(p.grid.x(i), p.time);
        const double e = p.values[i] - ref;
        r.max_abs = std::max(r.max_abs, std::abs(e));
        err2 += e * e;
        ref2 += ref * ref;
    }
    if (ref2 == 0.0) throw std::domain_error("error_report: exact solution vanishes on every node");
    r.rel_l2 = std::sqrt(err2 / ref2);
    return r;
}

double observed_order(double e_h, double e_h2) {
    if (e_h == 0.0 || e_h2 == 0.0) throw std::domain_error("observed_order: zero error");
    return std::log2(std::abs(e_h / e_h2));
}

double richardson_domain(double p_L, double p_2L, double p_4L) {
    return p_L / 3.0 - 2.0 * p_2L + 8.0 / 3.0 * p_4L;
}

double mass_integral(const DensityField& p) {
    const std::size_t n = p.size();
    if (n < 2) return 0.0;
    double sum = 0.5 * (p.values.front() + p.values.back());
    for (std::size_t i = 1; i + 1 < n; ++i) sum += p.values[i];
    return sum * p.grid.h();
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("ls_slope: need >= 2 matching points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("ls_slope: abscissae are all equal");
    return sxy / sxx;
}

double tail_slope(const DensityField& p, double x_lo, double x_hi) {
    if (!(x_lo > 0.0 && x_hi > x_lo)) throw std::invalid_argument("tail_slope: need 0 < x_lo < x_hi");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p.grid.x(i);
        if (x < x_lo || x > x_hi) continue;
        if (!(p.values[i] > 0.0)) throw std::domain_error("tail_slope: non-positive density in window");
        lx.push_back(std::log(x));
        ly.push_back(std::log(p.values[i]));
    }
    if (lx.size() < 2) throw std::invalid_argument("tail_slope: fewer than two nodes in window");
    return ls_slope(lx, ly);
}

}  // namespace nlfp
