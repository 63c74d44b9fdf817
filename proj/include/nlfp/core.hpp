#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nlfp/specfun.hpp"

namespace nlfp {

const char* version() noexcept;

/// Parameters of the driving Levy process: triplet (0, d, eps * nu_alpha).
/// The derived constants are evaluated once at construction.
struct LevyParams {
    LevyParams(double alpha, double eps, double d);

    StabilityIndex alpha;
    double eps;       ///< jump intensity, > 0
    double d;         ///< Gaussian diffusion, >= 0
    double c_alpha;   ///< jump-measure constant C_alpha
    double zeta_am1;  ///< zeta(alpha - 1)
};

/// Density forced to zero outside the symmetric interval (a, b) = (-B, B).
struct Absorbing {
    double a = -1.0;
    double b = 1.0;
};

/// Whole-line problem truncated to (-L, L).
struct Natural {
    double L = 50.0;
};

using AuxCondition = std::variant<Absorbing, Natural>;

/// Half-width of the computational interval for either condition.
double half_width(const AuxCondition& condition);
bool is_absorbing(const AuxCondition& condition);
std::string describe(const AuxCondition& condition);

/// Uniform mesh x_j = j h, j = -J..J, spanning the closed interval [-B, B].
class Grid {
public:
    Grid(AuxCondition condition, double h, std::size_t half_nodes);

    double h() const noexcept { return h_; }
    std::size_t J() const noexcept { return J_; }
    std::size_t size() const noexcept { return 2 * J_ + 1; }
    double half_width() const noexcept { return h_ * static_cast<double>(J_); }
    const AuxCondition& condition() const noexcept { return condition_; }
    bool absorbing() const noexcept { return is_absorbing(condition_); }

    /// Coordinate of storage slot i (i = j + J).
    double x(std::size_t i) const noexcept {
        return h_ * (static_cast<double>(i) - static_cast<double>(J_));
    }
    /// Storage slot of the node nearest to x (clamped to the grid).
    std::size_t index_of(double x) const noexcept;
    std::vector<double> nodes() const;

    bool same_nodes(const Grid& other) const noexcept;

private:
    AuxCondition condition_;
    double h_;
    std::size_t J_;
};

/// Builds the mesh for a condition; h must divide the half-width.
Grid build_grid(const AuxCondition& condition, double h);

/// Nodal density values at one time level.
struct DensityField {
    Grid grid;
    std::vector<double> values;
    double time = 0.0;

    DensityField(Grid g, std::vector<double> v, double t);
    explicit DensityField(Grid g, double t = 0.0);

    std::size_t size() const noexcept { return values.size(); }
    std::span<const double> view() const noexcept { return values; }
};

/// Zeroes the boundary nodes of an absorbing field; no-op for natural fields.
void enforce_condition(DensityField& field);

enum class DriftKind { Zero, OrnsteinUhlenbeck, DoubleWell, Tabulated };

struct DriftTable {
    std::vector<double> x;  ///< strictly increasing abscissae
    std::vector<double> f;
};

/// Drift f sampled on the nodes together with the global Lax-Friedrichs speed.
struct DriftField {
    DriftKind kind = DriftKind::Zero;
    std::vector<double> nodal_values;
    double lf_speed = 0.0;
};

double drift_value(DriftKind kind, double x);
DriftField make_drift(DriftKind kind, const Grid& grid);
/// Piecewise-linear interpolation of a table onto the nodes.
DriftField make_drift(const DriftTable& table, const Grid& grid);
void validate_table(const DriftTable& table);
/// Linear interpolation, held constant beyond the table ends.
double table_value(const DriftTable& table, double x);
std::string to_string(DriftKind kind);

/// sqrt(40/pi) exp(-x^2/40), exactly as printed (total mass 40 on the line).
struct GaussianWide {};
/// Unit-mass normal density.
struct GaussianNormalized {
    double variance = 1.0;
    double center = 0.0;
};
/// 0.5 on (-1, 1), zero elsewhere.
struct Uniform {};
/// Cauchy density at time t0: t0 / (pi (t0^2 + x^2)).
struct CauchySeed {
    double t0 = 0.01;
};

using InitialProfile = std::variant<GaussianWide, GaussianNormalized, Uniform, CauchySeed>;

double profile_value(const InitialProfile& profile, double x);
double profile_start_time(const InitialProfile& profile);
DensityField sample_initial(const InitialProfile& profile, const Grid& grid);

}  // namespace nlfp
