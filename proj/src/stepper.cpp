#include "nlfp/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "nlfp/simd.hpp"

namespace nlfp {

std::string to_string(Integrator mode) {
    return mode == Integrator::ForwardEuler ? "euler" : "rk3";
}

double select_dt(const LevyParams& params, const Grid& grid, double safety) {
    if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("safety must lie in (0, 1]");
    return safety * std::pow(grid.h(), params.alpha.value()) * mp_threshold(params.alpha, params.eps);
}

double select_dt(const OperatorWorkspace& ws, double safety) {
    const double h = ws.grid().h();
    double dt = select_dt(ws.params(), ws.grid(), safety);
    if (ws.params().d > 0.0) dt = std::min(dt, safety * h * h / (2.0 * ws.c_h()));
    if (ws.lf_speed() > 0.0) dt = std::min(dt, safety * h / ws.lf_speed());
    return dt;
}

double resolve_dt(const OperatorWorkspace& ws, const StepControl& ctrl) {
    if (ctrl.dt > 0.0) return ctrl.dt;
    return select_dt(ws, ctrl.safety);
}

namespace {

void check_finite(std::span<const double> v, double t) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            std::ostringstream os;
            os << "non-finite density at node " << i << " after stepping to t=" << t;
            throw SolverError(os.str());
        }
    }
}

}  // namespace

Stepper::Stepper(RhsFn rhs, std::size_t n, Integrator mode)
    : rhs_(std::move(rhs)), mode_(mode), r_(n), u1_(n), u2_(n) {}

void Stepper::step(std::span<double> u, double dt) {
    const auto& k = simd::kernels();
    const std::size_t n = u.size();
    if (n != r_.size()) throw std::invalid_argument("Stepper: state length changed");
    if (!(dt > 0.0)) throw std::invalid_argument("Stepper: dt must be positive");
    rhs_(u, r_);
    if (mode_ == Integrator::ForwardEuler) {
        k.combine2(u.data(), 1.0, u.data(), dt, r_.data(), n);
        return;
    }
    // U1 = U + dt R(U)
    k.combine2(u1_.data(), 1.0, u.data(), dt, r_.data(), n);
    // U2 = 3/4 U + 1/4 U1 + 1/4 dt R(U1)
    rhs_(u1_, r_);
    k.combine3(u2_.data(), 0.75, u.data(), 0.25, u1_.data(), 0.25 * dt, r_.data(), n);
    // U^{n+1} = 1/3 U + 2/3 U2 + 2/3 dt R(U2)
    rhs_(u2_, r_);
    k.combine3(u.data(), 1.0 / 3.0, u.data(), 2.0 / 3.0, u2_.data(), 2.0 / 3.0 * dt, r_.data(), n);
}

DensityField euler_step(const DensityField& p, const RhsFn& rhs, double dt) {
    DensityField next = p;
    Stepper(rhs, p.size(), Integrator::ForwardEuler).step(next.values, dt);
    next.time = p.time + dt;
    check_finite(next.values, next.time);
    return next;
}

DensityField rk3_step(const DensityField& p, const RhsFn& rhs, double dt) {
    DensityField next = p;
    Stepper(rhs, p.size(), Integrator::TvdRk3).step(next.values, dt);
    next.time = p.time + dt;
    check_finite(next.values, next.time);
    return next;
}

RhsFn make_rhs(const OperatorWorkspace& ws) {
    auto scratch = std::make_shared<RhsScratch>(ws.make_scratch());
    return [&ws, scratch](std::span<const double> p, std::span<double> out) { ws.rhs(p, out, *scratch); };
}

DensityField evolve(DensityField p, const RhsFn& rhs, Integrator mode, double dt, double t_end,
                    const OutputPlan& plan, EvolveStats* stats, std::size_t max_steps) {
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (t_end < p.time) throw std::invalid_argument("evolve: t_end precedes the field's time");
    const double t_start = p.time;
    const double snap = 1e-12 * std::max(1.0, std::abs(t_end));

    std::vector<double> targets;
    for (double t : plan.times) {
        if (t >= t_start - snap && t <= t_end + snap) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    const double budget = std::ceil((t_end - t_start) / dt) + static_cast<double>(targets.size()) + 1.0;
    if (budget > static_cast<double>(max_steps)) {
        std::ostringstream os;
        os << "evolve: about " << budget << " steps needed, limit is " << max_steps;
        throw SolverError(os.str());
    }

    Stepper stepper(rhs, p.size(), mode);
    std::size_t steps = 0;
    std::size_t next_out = 0;
    auto emit_due = [&] {
        while (next_out < targets.size() && targets[next_out] <= p.time + snap) {
            if (plan.on_output) plan.on_output(p);
            ++next_out;
        }
    };
    emit_due();

    auto advance_to = [&](double target) {
        while (target - p.time > snap) {
            const double remaining = target - p.time;
            const bool last = remaining <= dt * (1.0 + 1e-9);
            stepper.step(p.values, last ? remaining : dt);
            p.time = last ? target : p.time + dt;
            ++steps;
            check_finite(p.values, p.time);
        }
        p.time = std::max(p.time, target);
    };

    for (std::size_t k = next_out; k < targets.size(); ++k) {
        advance_to(targets[k]);
        p.time = targets[k];
        emit_due();
    }
    advance_to(t_end);
    if (t_end - t_start > snap) p.time = t_end;
    if (stats) {
        stats->steps = steps;
        stats->dt = dt;
    }
    return p;
}

DensityField evolve(DensityField p0, const OperatorWorkspace& ws, const StepControl& ctrl, double t_end,
                    const OutputPlan& plan, EvolveStats* stats) {
    if (!p0.grid.same_nodes(ws.grid())) throw std::invalid_argument("evolve: field/operator grid mismatch");
    if (t_end == p0.time && plan.times.empty()) return p0;
    enforce_condition(p0);
    return evolve(std::move(p0), make_rhs(ws), ctrl.mode, resolve_dt(ws, ctrl), t_end, plan, stats,
                  ctrl.max_steps);
}

}  // namespace nlfp
