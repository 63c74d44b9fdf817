#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlfp/core.hpp"
#include "nlfp/csv.hpp"
#include "nlfp/stepper.hpp"

namespace nlfp {

/// Pure-jump natural-condition run (f = 0, d = 0, eps = 1) on (-L, L) started
/// from the Cauchy seed at t0 = 0.01. dt = 0 selects dt = safety * bound.
DensityField cauchy_run(double alpha, double h, double L, double t_end, double dt = 0.0,
                        double safety = 0.5, Integrator mode = Integrator::TvdRk3);

struct ConvergenceRow {
    double h = 0.0;
    double error = 0.0;
    double order = 0.0;  ///< relative to the previous row; NaN for the first
};

/// |P(0.1, 0.02) - p(0.1, 0.02)| for alpha = 1 on (-L, L), dt = 0.5 h.
double point_error(double h, double L);
/// Same point, using (1/3) P(L) - 2 P(2L) + (8/3) P(4L).
double point_error_extrapolated(double h, double L);

std::vector<ConvergenceRow> convergence_table(const std::vector<double>& hs, double L, bool extrapolate);

struct MassRow {
    double L = 0.0;
    double mass = 0.0;
};
/// I_p(1) for the alpha = 1 Cauchy problem on each (-L, L).
std::vector<MassRow> mass_table(const std::vector<double>& Ls, double h);
/// Order q in 1 - I_p ~ L^(-q), fitted by least squares in log-log.
double mass_order(const std::vector<MassRow>& rows);

/// Tail slope of the natural run at t = 1 on (-L, L) over [x_lo, x_hi].
double tail_run_slope(double alpha, double h, double L, double x_lo, double x_hi, DensityField* field = nullptr);

/// Interior local maxima (strict on the left, non-strict on the right) above
/// `floor` times the global maximum.
std::vector<double> local_maxima(const DensityField& p, double floor = 0.05);

/// Double-well run: natural condition on (-L, L), d = 0.1, eps = 1, Gaussian
/// of variance 1/80 at x = -1.
DensityField doublewell_run(double alpha, double h, double L, double t_end);

struct McComparison {
    double ks = 0.0;  ///< against the Cauchy CDF with scale t
    double l1 = 0.0;  ///< integral of |p_mc - p_pde| over the comparison window
    std::size_t n_paths = 0;
};
/// alpha = 1, f = 0, d = 0, eps = 1 paths from x = 0 to time t, compared with the
/// PDE density on (-L, L) using bins of width `bin` over (-window, window).
McComparison mc_compare(const DensityField& pde, std::size_t n_paths, double mc_dt, std::uint64_t seed,
                        unsigned threads, double bin, double window);

/// Rows (alpha, threshold) of the maximum-principle step bound for eps = 1.
CsvTable threshold_table(double alpha_lo = 0.01, double alpha_hi = 1.99, std::size_t n = 199);

struct SuiteOptions {
    std::string out_dir = "out";
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
    std::string config_text;  ///< optional JSON object with suite-specific overrides
};

struct SuiteResult {
    std::string name;
    std::vector<std::string> files;
    std::vector<std::string> summary;  ///< human-readable lines
};

std::vector<std::string> suite_names();
/// Runs a built-in suite and writes its CSV files and a manifest into out_dir.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace nlfp
