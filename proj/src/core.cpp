#include "nlfp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlfp {

const char* version() noexcept { return NLFP_VERSION; }

LevyParams::LevyParams(double a, double eps_, double d_)
    : alpha(a), eps(eps_), d(d_), c_alpha(0.0), zeta_am1(0.0) {
    if (!(eps > 0.0)) throw std::invalid_argument("noise intensity eps must be positive");
    if (!(d >= 0.0)) throw std::invalid_argument("Gaussian diffusion d must be non-negative");
    c_alpha = nlfp::c_alpha(alpha);
    zeta_am1 = riemann_zeta(alpha.value() - 1.0);
}

double half_width(const AuxCondition& condition) {
    if (const auto* abs = std::get_if<Absorbing>(&condition)) return abs->b;
    return std::get<Natural>(condition).L;
}

bool is_absorbing(const AuxCondition& condition) {
    return std::holds_alternative<Absorbing>(condition);
}

std::string describe(const AuxCondition& condition) {
    std::ostringstream os;
    if (const auto* abs = std::get_if<Absorbing>(&condition)) {
        os << "absorbing(" << abs->a << ", " << abs->b << ")";
    } else {
        os << "natural(L=" << std::get<Natural>(condition).L << ")";
    }
    return os.str();
}

namespace {

void validate(const AuxCondition& condition) {
    if (const auto* abs = std::get_if<Absorbing>(&condition)) {
        if (!(abs->a < abs->b)) throw std::invalid_argument("absorbing interval requires a < b");
        if (std::abs(abs->a + abs->b) > 1e-12 * std::max(1.0, abs->b)) {
            throw std::invalid_argument("absorbing interval must be symmetric, (-B, B)");
        }
    } else {
        const double L = std::get<Natural>(condition).L;
        if (!(L >= 1.0)) throw std::invalid_argument("natural condition requires L >= 1");
    }
}

}  // namespace

Grid::Grid(AuxCondition condition, double h, std::size_t half_nodes)
    : condition_(std::move(condition)), h_(h), J_(half_nodes) {
    validate(condition_);
    if (!(h_ > 0.0) || J_ == 0) throw std::invalid_argument("grid needs h > 0 and J >= 1");
}

std::size_t Grid::index_of(double x) const noexcept {
    const double j = std::round(x / h_) + static_cast<double>(J_);
    if (j <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(j), size() - 1);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x(i);
    return xs;
}

bool Grid::same_nodes(const Grid& other) const noexcept {
    return J_ == other.J_ && h_ == other.h_;
}

Grid build_grid(const AuxCondition& condition, double h) {
    validate(condition);
    if (!(h > 0.0)) throw std::invalid_argument("grid spacing h must be positive");
    const double B = half_width(condition);
    const double ratio = std::round(B / h);
    if (ratio < 1.0 || std::abs(ratio * h - B) > 1e-12 * std::max(1.0, B)) {
        std::ostringstream os;
        os << "grid spacing h=" << h << " does not divide the half-width " << B;
        throw std::invalid_argument(os.str());
    }
    const auto J = static_cast<std::size_t>(ratio);
    // Snap h so that J h reproduces the half-width to rounding.
    return Grid(condition, B / ratio, J);
}

DensityField::DensityField(Grid g, std::vector<double> v, double t)
    : grid(std::move(g)), values(std::move(v)), time(t) {
    if (values.size() != grid.size()) {
        throw std::invalid_argument("density field length does not match its grid");
    }
}

DensityField::DensityField(Grid g, double t) : grid(std::move(g)), values(grid.size(), 0.0), time(t) {}

void enforce_condition(DensityField& field) {
    if (field.grid.absorbing()) {
        field.values.front() = 0.0;
        field.values.back() = 0.0;
    }
}

double drift_value(DriftKind kind, double x) {
    switch (kind) {
        case DriftKind::Zero: return 0.0;
        case DriftKind::OrnsteinUhlenbeck: return -x;
        case DriftKind::DoubleWell: return x - x * x * x;
        case DriftKind::Tabulated: break;
    }
    throw std::invalid_argument("drift_value: tabulated drift has no closed form");
}

DriftField make_drift(DriftKind kind, const Grid& grid) {
    if (kind == DriftKind::Tabulated) {
        throw std::invalid_argument("make_drift: tabulated drift needs a table");
    }
    DriftField drift;
    drift.kind = kind;
    drift.nodal_values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) drift.nodal_values[i] = drift_value(kind, grid.x(i));

    const double B = grid.half_width();
    switch (kind) {
        case DriftKind::Zero: drift.lf_speed = 0.0; break;
        case DriftKind::OrnsteinUhlenbeck: drift.lf_speed = B; break;
        case DriftKind::DoubleWell: {
            // |x - x^3| on [0, B]: interior bump at 1/sqrt(3), otherwise the endpoint.
            const double xc = 1.0 / std::sqrt(3.0);
            const double bump = B >= xc ? xc - xc * xc * xc : 0.0;
            drift.lf_speed = std::max(bump, std::abs(B - B * B * B));
            break;
        }
        case DriftKind::Tabulated: break;
    }
    return drift;
}

void validate_table(const DriftTable& table) {
    const auto& tx = table.x;
    if (tx.size() < 2 || tx.size() != table.f.size()) {
        throw std::invalid_argument("drift table needs >= 2 points and matching columns");
    }
    if (!std::is_sorted(tx.begin(), tx.end()) ||
        std::adjacent_find(tx.begin(), tx.end()) != tx.end()) {
        throw std::invalid_argument("drift table abscissae must be strictly increasing");
    }
}

double table_value(const DriftTable& table, double x) {
    const auto& tx = table.x;
    const auto& tf = table.f;
    x = std::clamp(x, tx.front(), tx.back());
    auto hi = std::upper_bound(tx.begin(), tx.end(), x);
    if (hi == tx.end()) --hi;
    const auto k = static_cast<std::size_t>(hi - tx.begin());
    const double w = (x - tx[k - 1]) / (tx[k] - tx[k - 1]);
    return (1.0 - w) * tf[k - 1] + w * tf[k];
}

DriftField make_drift(const DriftTable& table, const Grid& grid) {
    validate_table(table);
    const double B = grid.half_width();
    const double tol = 1e-12 * std::max(1.0, B);
    if (table.x.front() > -B + tol || table.x.back() < B - tol) {
        throw std::invalid_argument("drift table does not cover the computational interval");
    }
    DriftField drift;
    drift.kind = DriftKind::Tabulated;
    drift.nodal_values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) drift.nodal_values[i] = table_value(table, grid.x(i));
    for (double v : drift.nodal_values) drift.lf_speed = std::max(drift.lf_speed, std::abs(v));
    return drift;
}

std::string to_string(DriftKind kind) {
    switch (kind) {
        case DriftKind::Zero: return "zero";
        case DriftKind::OrnsteinUhlenbeck: return "ou";
        case DriftKind::DoubleWell: return "double_well";
        case DriftKind::Tabulated: return "tabulated";
    }
    return "?";
}

double profile_value(const InitialProfile& profile, double x) {
    constexpr double pi = std::numbers::pi;
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianWide>) {
                return std::sqrt(40.0 / pi) * std::exp(-x * x / 40.0);
            } else if constexpr (std::is_same_v<T, GaussianNormalized>) {
                const double u = x - p.center;
                return std::exp(-0.5 * u * u / p.variance) / std::sqrt(2.0 * pi * p.variance);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return std::abs(x) <= 1.0 + 1e-12 ? 0.5 : 0.0;
            } else {
                return p.t0 / (pi * (p.t0 * p.t0 + x * x));
            }
        },
        profile);
}

double profile_start_time(const InitialProfile& profile) {
    if (const auto* seed = std::get_if<CauchySeed>(&profile)) return seed->t0;
    return 0.0;
}

DensityField sample_initial(const InitialProfile& profile, const Grid& grid) {
    if (const auto* seed = std::get_if<CauchySeed>(&profile); seed && !(seed->t0 > 0.0)) {
        throw std::invalid_argument("Cauchy seed time t0 must be positive");
    }
    if (const auto* g = std::get_if<GaussianNormalized>(&profile); g && !(g->variance > 0.0)) {
        throw std::invalid_argument("Gaussian variance must be positive");
    }
    DensityField field(grid, profile_start_time(profile));
    for (std::size_t i = 0; i < grid.size(); ++i) field.values[i] = profile_value(profile, grid.x(i));
    return field;
}

}  // namespace nlfp
