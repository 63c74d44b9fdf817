#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "nlfp/core.hpp"

namespace nlfp {

/// Chambers-Mallows-Stuck map from U ~ Uniform(-pi/2, pi/2) and W ~ Exp(1)
/// to a standard symmetric alpha-stable variate (characteristic function
/// exp(-|k|^alpha)). For alpha = 1 this reduces to tan(U).
double cms_transform(StabilityIndex alpha, double u, double w);

/// One standard symmetric alpha-stable variate.
double cms_sample(StabilityIndex alpha, std::mt19937_64& rng);

/// SDE coefficients for path simulation. Unlike LevyParams, eps = 0 is allowed
/// so the deterministic limit can be exercised.
struct SdeParams {
    StabilityIndex alpha{1.0};
    double eps = 1.0;
    double d = 0.0;

    SdeParams() = default;
    SdeParams(double alpha, double eps, double d);
    explicit SdeParams(const LevyParams& p);
};

struct McConfig {
    double T = 1.0;
    std::size_t n_paths = 100000;
    double dt = 0.01;
    std::uint64_t seed = 20240917;
    double x0 = 0.0;
    double guard_radius = 1e8;  ///< paths leaving |x| <= guard are frozen and flagged
    unsigned threads = 1;
};

struct PathEnsemble {
    std::vector<double> samples;        ///< X_T, or the last in-guard position for exited paths
    std::vector<std::uint8_t> exited;   ///< 1 if the path left the guard radius
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    SdeParams params;
    std::string drift_label;
    double T = 0.0;
    double dt = 0.0;
};

/// Euler-Maruyama paths of dX = f(X) dt + dL_t,
///   X <- X + f(X) dt + sqrt(d dt) N + (eps dt)^(1/alpha) S.
/// Path k draws from its own generator seeded from (seed, k), so the samples do
/// not depend on the number of worker threads.
PathEnsemble simulate_terminal(const SdeParams& params, const std::function<double(double)>& drift,
                               const McConfig& cfg, std::string drift_label = "custom");
PathEnsemble simulate_terminal(const SdeParams& params, DriftKind drift, const McConfig& cfg);

/// Histogram with one bin of width h centred on each node, normalised by
/// n_paths * h. Samples outside every bin are dropped but still counted in n_paths.
DensityField empirical_density(const PathEnsemble& ensemble, const Grid& grid);

/// Kolmogorov-Smirnov distance sup |F_n - F|.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

double cauchy_cdf(double x, double scale);
double normal_cdf(double x, double mean, double sd);

/// Writes "path_index,terminal_x" rows.
void write_ensemble_csv(const PathEnsemble& ensemble, const std::string& path);

}  // namespace nlfp
