#include "nlfp/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlfp/simd.hpp"

namespace nlfp {

namespace {

constexpr std::size_t kGhost = 2;

std::vector<double> pad(std::span<const double> phi, Ghosts ghosts) {
    const std::size_t n = phi.size();
    std::vector<double> ext(n + 2 * kGhost, 0.0);
    std::copy(phi.begin(), phi.end(), ext.begin() + kGhost);
    if (ghosts == Ghosts::Zero) {
        ext[kGhost] = 0.0;
        ext[kGhost + n - 1] = 0.0;
    } else {
        const double left_slope = n > 1 ? phi[1] - phi[0] : 0.0;
        const double right_slope = n > 1 ? phi[n - 1] - phi[n - 2] : 0.0;
        ext[1] = phi[0] - left_slope;
        ext[0] = phi[0] - 2.0 * left_slope;
        ext[kGhost + n] = phi[n - 1] + right_slope;
        ext[kGhost + n + 1] = phi[n - 1] + 2.0 * right_slope;
    }
    return ext;
}

template <typename Kernel>
std::vector<double> weno_apply(std::span<const double> phi, double h, double delta, Ghosts ghosts,
                               Kernel kernel) {
    if (phi.empty()) return {};
    if (!(h > 0.0)) throw std::invalid_argument("weno3: spacing must be positive");
    const auto ext = pad(phi, ghosts);
    const std::size_t n = phi.size();
    std::vector<double> out(n, 0.0);
    if (ghosts == Ghosts::Linear) {
        kernel(out.data(), ext.data() + kGhost, h, delta, n);
    } else if (n > 2) {
        kernel(out.data() + 1, ext.data() + kGhost + 1, h, delta, n - 2);
    }
    return out;
}

}  // namespace

std::vector<double> weno3_plus(std::span<const double> phi, double h, double delta, Ghosts ghosts) {
    return weno_apply(phi, h, delta, ghosts, simd::kernels().weno_plus);
}

std::vector<double> weno3_minus(std::span<const double> phi, double h, double delta, Ghosts ghosts) {
    return weno_apply(phi, h, delta, ghosts, simd::kernels().weno_minus);
}

OperatorWorkspace::OperatorWorkspace(const LevyParams& params, const Grid& grid, DriftField drift,
                                     OperatorOptions options)
    : params_(params),
      grid_(grid),
      drift_(std::move(drift)),
      options_(options),
      has_advection_(false),
      column_(grid.size(), 0.0),
      toeplitz_(std::vector<double>(1, 0.0)),
      c_h_(0.0) {
    const std::size_t n = grid_.size();
    const double h = grid_.h();
    const double a = params_.alpha.value();
    const double eps_c = params_.eps * params_.c_alpha;

    if (drift_.nodal_values.size() != n) {
        throw std::invalid_argument("prepare: drift is not sampled on this grid");
    }
    if (!(options_.weno_delta > 0.0)) throw std::invalid_argument("prepare: weno_delta must be positive");
    has_advection_ = std::any_of(drift_.nodal_values.begin(), drift_.nodal_values.end(),
                                 [](double f) { return f != 0.0; }) ||
                     drift_.lf_speed != 0.0;

    // w_k = h / (k h)^(1+a) = h^-a k^-(1+a)
    const double scale = std::pow(h, -a);
    for (std::size_t k = 1; k < n; ++k) {
        column_[k] = scale * std::pow(static_cast<double>(k), -(1.0 + a));
    }
    toeplitz_ = SymmetricToeplitz(column_);
    if (options_.path == MatvecPath::Fast) {
        prepared_ = std::make_shared<const PreparedToeplitz>(toeplitz_);
    }

    // S_i from prefix sums; the far neighbours m = 0 and m = 2J carry weight 1/2.
    std::vector<double> prefix(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) prefix[k] = prefix[k - 1] + column_[k];
    diag_sums_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t left = i;           // distance to m = 0
        const std::size_t right = n - 1 - i;  // distance to m = 2J
        double s = prefix[left] + prefix[right];
        if (left > 0) s -= 0.5 * column_[left];
        if (right > 0) s -= 0.5 * column_[right];
        diag_sums_[i] = s;
    }

    exterior_.assign(n, 0.0);
    if (grid_.absorbing()) {
        const double B = grid_.half_width();
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double x = grid_.x(i);
            exterior_[i] = eps_c / a * (std::pow(B + x, -a) + std::pow(B - x, -a));
        }
    }

    c_h_ = 0.5 * params_.d - eps_c * params_.zeta_am1 * std::pow(h, 2.0 - a);

    diag_.resize(n);
    const double lap = c_h_ / (h * h);
    for (std::size_t i = 0; i < n; ++i) diag_[i] = 2.0 * lap + eps_c * diag_sums_[i] + exterior_[i];

    for (double v : diag_) {
        if (!std::isfinite(v)) throw std::invalid_argument("prepare: non-finite operator coefficient");
    }
}

RhsScratch OperatorWorkspace::make_scratch() const {
    const std::size_t n = grid_.size();
    RhsScratch s;
    if (prepared_) s.toeplitz = prepared_->make_scratch();
    s.conv.assign(n, 0.0);
    if (has_advection_) {
        s.flux_plus.assign(n + 2 * kGhost, 0.0);
        s.flux_minus.assign(n + 2 * kGhost, 0.0);
        s.deriv_plus.assign(n, 0.0);
        s.deriv_minus.assign(n, 0.0);
    }
    s.adv.assign(n, 0.0);
    return s;
}

void OperatorWorkspace::ensure(RhsScratch& scratch) const {
    const std::size_t n = grid_.size();
    const bool ok = scratch.conv.size() == n && scratch.adv.size() == n &&
                    (!has_advection_ || scratch.flux_plus.size() == n + 2 * kGhost) &&
                    (!prepared_ || scratch.toeplitz.padded.size() == prepared_->embedding_size());
    if (!ok) scratch = make_scratch();
}

void OperatorWorkspace::convolve(std::span<const double> p, RhsScratch& scratch) const {
    const std::size_t n = grid_.size();
    if (p.size() != n) throw std::invalid_argument("operator: density length does not match grid");
    ensure(scratch);
    if (prepared_) {
        prepared_->apply(p, scratch.conv, scratch.toeplitz);
    } else {
        matvec_naive(toeplitz_, p, scratch.conv);
    }
    // Remove half of the two end-node contributions.
    const double p_first = 0.5 * p[0];
    const double p_last = 0.5 * p[n - 1];
    if (p_first != 0.0 || p_last != 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            scratch.conv[i] -= column_[i] * p_first + column_[n - 1 - i] * p_last;
        }
    }
}

void OperatorWorkspace::compute_advection(std::span<const double> p, RhsScratch& scratch) const {
    const std::size_t n = grid_.size();
    const double lambda = drift_.lf_speed;
    const auto& f = drift_.nodal_values;
    ensure(scratch);
    auto& fp = scratch.flux_plus;
    auto& fm = scratch.flux_minus;
    // Ghost convention: the flux vanishes at the two end nodes and beyond.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        fp[kGhost + i] = 0.5 * (f[i] + lambda) * p[i];
        fm[kGhost + i] = 0.5 * (f[i] - lambda) * p[i];
    }
    std::fill_n(fp.begin(), kGhost + 1, 0.0);
    std::fill_n(fm.begin(), kGhost + 1, 0.0);
    std::fill(fp.end() - kGhost - 1, fp.end(), 0.0);
    std::fill(fm.end() - kGhost - 1, fm.end(), 0.0);

    std::fill(scratch.adv.begin(), scratch.adv.end(), 0.0);
    if (n <= 2) return;
    const auto& k = simd::kernels();
    const double h = grid_.h();
    const std::size_t m = n - 2;
    k.weno_plus(scratch.deriv_plus.data() + 1, fp.data() + kGhost + 1, h, options_.weno_delta, m);
    k.weno_minus(scratch.deriv_minus.data() + 1, fm.data() + kGhost + 1, h, options_.weno_delta, m);
    k.combine2(scratch.adv.data() + 1, -1.0, scratch.deriv_plus.data() + 1, -1.0,
               scratch.deriv_minus.data() + 1, m);
}

void OperatorWorkspace::nonlocal_sum(std::span<const double> p, std::span<double> out,
                                     RhsScratch& scratch) const {
    convolve(p, scratch);
    const double eps_c = params_.eps * params_.c_alpha;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = eps_c * (scratch.conv[i] - diag_sums_[i] * p[i]);
    }
}

void OperatorWorkspace::advection(std::span<const double> p, std::span<double> out,
                                  RhsScratch& scratch) const {
    if (p.size() != grid_.size() || out.size() != grid_.size()) {
        throw std::invalid_argument("advection: length mismatch");
    }
    if (!has_advection_) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    compute_advection(p, scratch);
    std::copy(scratch.adv.begin(), scratch.adv.end(), out.begin());
}

void OperatorWorkspace::rhs(std::span<const double> p, std::span<double> out, RhsScratch& scratch) const {
    const std::size_t n = grid_.size();
    if (out.size() != n) throw std::invalid_argument("rhs: output length does not match grid");
    convolve(p, scratch);
    const double* adv = nullptr;
    if (has_advection_) {
        compute_advection(p, scratch);
        adv = scratch.adv.data();
    }
    const double h = grid_.h();
    const double lap = c_h_ / (h * h);
    const double eps_c = params_.eps * params_.c_alpha;
    if (n > 2) {
        simd::kernels().assemble(out.data() + 1, p.data() + 1, scratch.conv.data() + 1,
                                 diag_.data() + 1, adv ? adv + 1 : nullptr, lap, eps_c, n - 2);
    }
    if (grid_.absorbing()) {
        out[0] = 0.0;
        out[n - 1] = 0.0;
    } else {
        // Zero ghost values one cell beyond the truncated interval.
        const double left_nb = n > 1 ? p[1] : 0.0;
        const double right_nb = n > 1 ? p[n - 2] : 0.0;
        out[0] = lap * left_nb + eps_c * scratch.conv[0] - diag_[0] * p[0];
        if (n > 1) out[n - 1] = lap * right_nb + eps_c * scratch.conv[n - 1] - diag_[n - 1] * p[n - 1];
    }
}

OperatorWorkspace prepare(const LevyParams& params, const Grid& grid, DriftField drift,
                          OperatorOptions options) {
    return OperatorWorkspace(params, grid, std::move(drift), options);
}

namespace {

void check_bound(const DensityField& p, const OperatorWorkspace& ws) {
    if (!p.grid.same_nodes(ws.grid()) || p.grid.absorbing() != ws.grid().absorbing()) {
        throw std::invalid_argument("density field is not bound to the operator's grid");
    }
}

}  // namespace

std::vector<double> nonlocal_sum(const DensityField& p, const OperatorWorkspace& ws) {
    check_bound(p, ws);
    auto scratch = ws.make_scratch();
    std::vector<double> out(p.size());
    ws.nonlocal_sum(p.values, out, scratch);
    return out;
}

std::vector<double> advection_term(const DensityField& p, const OperatorWorkspace& ws) {
    check_bound(p, ws);
    auto scratch = ws.make_scratch();
    std::vector<double> out(p.size());
    ws.advection(p.values, out, scratch);
    return out;
}

std::vector<double> evaluate_rhs(const DensityField& p, const OperatorWorkspace& ws) {
    check_bound(p, ws);
    auto scratch = ws.make_scratch();
    std::vector<double> out(p.size());
    ws.rhs(p.values, out, scratch);
    return out;
}

std::vector<double> rhs_absorbing(const DensityField& p, const OperatorWorkspace& ws) {
    if (!ws.grid().absorbing()) throw std::invalid_argument("rhs_absorbing: workspace grid is natural");
    return evaluate_rhs(p, ws);
}

std::vector<double> rhs_natural(const DensityField& p, const OperatorWorkspace& ws) {
    if (ws.grid().absorbing()) throw std::invalid_argument("rhs_natural: workspace grid is absorbing");
    return evaluate_rhs(p, ws);
}

}  // namespace nlfp
