#include "nlfp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "nlfp/csv.hpp"

namespace nlfp {

double cms_transform(StabilityIndex alpha, double u, double w) {
    const double a = alpha.value();
    if (a == 1.0) return std::tan(u);
    const double cu = std::cos(u);
    return std::sin(a * u) / std::pow(cu, 1.0 / a) * std::pow(std::cos(u - a * u) / w, (1.0 - a) / a);
}

double cms_sample(StabilityIndex alpha, std::mt19937_64& rng) {
    constexpr double half_pi = 0.5 * std::numbers::pi;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const double u01 = unit(rng);
        const double e01 = unit(rng);
        if (u01 <= 0.0 || e01 <= 0.0) continue;
        const double u = std::numbers::pi * (u01 - 0.5);
        if (std::abs(u) >= half_pi * (1.0 - 1e-15) || std::cos(u) <= 0.0) continue;
        const double x = cms_transform(alpha, u, -std::log(e01));
        if (std::isfinite(x)) return x;
    }
}

SdeParams::SdeParams(double a, double e, double dd) : alpha(a), eps(e), d(dd) {
    if (!(eps >= 0.0)) throw std::invalid_argument("SdeParams: eps must be non-negative");
    if (!(d >= 0.0)) throw std::invalid_argument("SdeParams: d must be non-negative");
}

SdeParams::SdeParams(const LevyParams& p) : alpha(p.alpha), eps(p.eps), d(p.d) {}

namespace {

std::mt19937_64 path_generator(std::uint64_t seed, std::uint64_t path) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

PathEnsemble simulate_terminal(const SdeParams& params, const std::function<double(double)>& drift,
                               const McConfig& cfg, std::string drift_label) {
    if (!(cfg.T > 0.0) || !(cfg.dt > 0.0)) throw std::invalid_argument("simulate_terminal: T and dt must be positive");
    PathEnsemble ens;
    ens.n_paths = cfg.n_paths;
    ens.seed = cfg.seed;
    ens.params = params;
    ens.drift_label = std::move(drift_label);
    ens.T = cfg.T;
    ens.dt = cfg.dt;
    ens.samples.assign(cfg.n_paths, 0.0);
    ens.exited.assign(cfg.n_paths, 0);

    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.T / cfg.dt - 1e-9));
    const double a = params.alpha.value();
    const double jump_scale = std::pow(params.eps * cfg.dt, 1.0 / a);
    const bool jumps = params.eps > 0.0;
    const bool gauss = params.d > 0.0;

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            auto rng = path_generator(cfg.seed, k);
            std::normal_distribution<double> normal(0.0, 1.0);
            double x = cfg.x0;
            double t = 0.0;
            std::uint8_t out = 0;
            for (std::size_t s = 0; s < n_steps; ++s) {
                const double h = std::min(cfg.dt, cfg.T - t);
                double next = x + drift(x) * h;
                if (gauss) next += std::sqrt(params.d * h) * normal(rng);
                if (jumps) {
                    const double scale = h == cfg.dt ? jump_scale : std::pow(params.eps * h, 1.0 / a);
                    next += scale * cms_sample(params.alpha, rng);
                }
                t += h;
                if (!std::isfinite(next) || std::abs(next) > cfg.guard_radius) {
                    out = 1;
                    break;
                }
                x = next;
            }
            ens.samples[k] = x;
            ens.exited[k] = out;
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.n_paths)));
    if (workers == 1) {
        run_range(0, cfg.n_paths);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (cfg.n_paths + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk;
            const std::size_t e = std::min(cfg.n_paths, b + chunk);
            if (b < e) pool.emplace_back(run_range, b, e);
        }
    }
    return ens;
}

PathEnsemble simulate_terminal(const SdeParams& params, DriftKind drift, const McConfig& cfg) {
    if (drift == DriftKind::Tabulated) {
        throw std::invalid_argument("simulate_terminal: pass a callable for tabulated drifts");
    }
    return simulate_terminal(params, [drift](double x) { return drift_value(drift, x); }, cfg,
                             to_string(drift));
}

DensityField empirical_density(const PathEnsemble& ensemble, const Grid& grid) {
    if (ensemble.n_paths == 0 || ensemble.samples.empty()) {
        throw std::invalid_argument("empirical_density: empty ensemble");
    }
    DensityField field(grid, ensemble.T);
    const double h = grid.h();
    const double J = static_cast<double>(grid.J());
    for (double x : ensemble.samples) {
        const double j = std::round(x / h);
        if (std::abs(j) > J) continue;
        field.values[static_cast<std::size_t>(j + J)] += 1.0;
    }
    const double norm = 1.0 / (static_cast<double>(ensemble.n_paths) * h);
    for (double& v : field.values) v *= norm;
    return field;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double cauchy_cdf(double x, double scale) { return 0.5 + std::atan(x / scale) / std::numbers::pi; }

double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

void write_ensemble_csv(const PathEnsemble& ensemble, const std::string& path) {
    CsvTable table({"path_index", "terminal_x"});
    for (std::size_t k = 0; k < ensemble.samples.size(); ++k) {
        table.add_row({static_cast<double>(k), ensemble.samples[k]});
    }
    write_csv_atomic(table, path);
}

}  // namespace nlfp
