#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlfp/core.hpp"
#include "nlfp/operator.hpp"

namespace nlfp {

enum class Integrator { ForwardEuler, TvdRk3 };

std::string to_string(Integrator mode);

struct StepControl {
    double dt = 0.0;        ///< fixed step; 0 selects it from the stability bounds
    double safety = 0.5;    ///< fraction of the bound used when dt is selected
    Integrator mode = Integrator::TvdRk3;
    std::size_t max_steps = 100'000'000;
};

/// Raised when a step produces a non-finite value or the step budget is exceeded.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// safety * h^alpha * mp_threshold(alpha, eps).
double select_dt(const LevyParams& params, const Grid& grid, double safety);

/// The jump bound above, further limited by h^2 / (2 C_h) when d > 0 and by
/// h / lambda_LF when a drift is present.
double select_dt(const OperatorWorkspace& ws, double safety);

/// Step size that evolve() will use for this control.
double resolve_dt(const OperatorWorkspace& ws, const StepControl& ctrl);

/// Writes R(u) into its second argument.
using RhsFn = std::function<void(std::span<const double>, std::span<double>)>;

DensityField euler_step(const DensityField& p, const RhsFn& rhs, double dt);
DensityField rk3_step(const DensityField& p, const RhsFn& rhs, double dt);

/// Reusable stage buffers for repeated stepping of one system.
class Stepper {
public:
    Stepper(RhsFn rhs, std::size_t n, Integrator mode);

    /// Advances `values` in place by dt.
    void step(std::span<double> values, double dt);
    Integrator mode() const noexcept { return mode_; }

private:
    RhsFn rhs_;
    Integrator mode_;
    std::vector<double> r_, u1_, u2_;
};

/// Wraps an operator workspace as an RhsFn with its own scratch buffers.
RhsFn make_rhs(const OperatorWorkspace& ws);

struct OutputPlan {
    std::vector<double> times;  ///< absolute times; those within [t_start, t_end] are visited
    std::function<void(const DensityField&)> on_output;
};

struct EvolveStats {
    std::size_t steps = 0;
    double dt = 0.0;
};

/// Steps p0 to t_end with fixed dt, shortening the step before each output
/// time and before t_end so those times are hit exactly.
DensityField evolve(DensityField p0, const RhsFn& rhs, Integrator mode, double dt, double t_end,
                    const OutputPlan& plan = {}, EvolveStats* stats = nullptr,
                    std::size_t max_steps = 100'000'000);

DensityField evolve(DensityField p0, const OperatorWorkspace& ws, const StepControl& ctrl,
                    double t_end, const OutputPlan& plan = {}, EvolveStats* stats = nullptr);

}  // namespace nlfp
