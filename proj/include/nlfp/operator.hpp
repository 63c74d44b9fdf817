#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nlfp/core.hpp"
#include "nlfp/toeplitz.hpp"

namespace nlfp {

/// How the nonlocal convolution is evaluated. Naive exists for cross-checks.
enum class MatvecPath { Fast, Naive };

struct OperatorOptions {
    double weno_delta = 1e-6;
    MatvecPath path = MatvecPath::Fast;
};

/// Ghost-value convention for the standalone WENO3 derivatives.
///   Zero:   phi at the two end nodes and the two cells beyond them is taken
///           as 0; derivatives are produced for the interior nodes only and the
///           end entries of the result are 0.
///   Linear: phi is extended linearly by two cells on each side and the
///           derivative is produced at every node.
enum class Ghosts { Zero, Linear };

/// Third-order WENO derivative on the left-biased stencil {j-2, j-1, j, j+1}.
std::vector<double> weno3_plus(std::span<const double> phi, double h, double delta = 1e-6,
                               Ghosts ghosts = Ghosts::Zero);
/// Third-order WENO derivative on the right-biased stencil {j-1, j, j+1, j+2}.
std::vector<double> weno3_minus(std::span<const double> phi, double h, double delta = 1e-6,
                                Ghosts ghosts = Ghosts::Zero);

/// Buffers reused across right-hand-side evaluations. Not shareable between threads.
struct RhsScratch {
    ToeplitzScratch toeplitz;
    std::vector<double> conv;
    std::vector<double> flux_plus;   // padded by two ghosts per side
    std::vector<double> flux_minus;
    std::vector<double> deriv_plus;
    std::vector<double> deriv_minus;
    std::vector<double> adv;
};

/// Everything about the semi-discrete right-hand side that does not depend on
/// the density: the prepared nonlocal kernel, the per-node quadrature sums,
/// the exterior-decay coefficients (absorbing only), the corrected diffusion
/// coefficient and the drift.
///
/// With storage index i = j + J and N = 2J + 1 nodes, the right-hand side is
///
///   dP_i/dt = C_h (P_{i-1} - 2 P_i + P_{i+1}) / h^2
///             - [D+ (fP)+ + D- (fP)-]_i
///             - E_i P_i
///             + eps C_a sum''_{m != i} w_{|m-i|} (P_m - P_i),
///
/// where w_k = h / (k h)^(1+a), the double prime halves the terms m = 0 and
/// m = N - 1, and (fP)+- = (f +- lambda) P / 2.
class OperatorWorkspace {
public:
    OperatorWorkspace(const LevyParams& params, const Grid& grid, DriftField drift,
                      OperatorOptions options = {});

    const LevyParams& params() const noexcept { return params_; }
    const Grid& grid() const noexcept { return grid_; }
    const DriftField& drift() const noexcept { return drift_; }
    const OperatorOptions& options() const noexcept { return options_; }

    /// w_k for k = 1..2J (element k-1).
    std::span<const double> kernel_weights() const noexcept {
        return std::span<const double>(column_).subspan(1);
    }
    /// S_i = sum''_{m != i} w_{|m-i|}, without the eps C_a factor.
    std::span<const double> diagonal_sums() const noexcept { return diag_sums_; }
    /// E_i (zero at the boundary nodes and for natural grids).
    std::span<const double> exterior() const noexcept { return exterior_; }
    double c_h() const noexcept { return c_h_; }
    double lf_speed() const noexcept { return drift_.lf_speed; }
    bool has_advection() const noexcept { return has_advection_; }

    RhsScratch make_scratch() const;

    /// Full right-hand side for the grid's auxiliary condition.
    void rhs(std::span<const double> p, std::span<double> out, RhsScratch& scratch) const;
    /// eps C_a sum''_{m != i} w_{|m-i|} (P_m - P_i) at every node.
    void nonlocal_sum(std::span<const double> p, std::span<double> out, RhsScratch& scratch) const;
    /// -[D+ (fP)+ + D- (fP)-] at every node (zero at the two end nodes).
    void advection(std::span<const double> p, std::span<double> out, RhsScratch& scratch) const;

private:
    void ensure(RhsScratch& scratch) const;
    void convolve(std::span<const double> p, RhsScratch& scratch) const;
    void compute_advection(std::span<const double> p, RhsScratch& scratch) const;

    LevyParams params_;
    Grid grid_;
    DriftField drift_;
    OperatorOptions options_;
    bool has_advection_;

    std::vector<double> column_;  // [0, w_1, ..., w_2J]
    SymmetricToeplitz toeplitz_;
    std::shared_ptr<const PreparedToeplitz> prepared_;
    std::vector<double> diag_sums_;
    std::vector<double> exterior_;
    std::vector<double> diag_;  // 2 C_h / h^2 + eps C_a S_i + E_i
    double c_h_;
};

OperatorWorkspace prepare(const LevyParams& params, const Grid& grid, DriftField drift,
                          OperatorOptions options = {});

std::vector<double> nonlocal_sum(const DensityField& p, const OperatorWorkspace& ws);
std::vector<double> advection_term(const DensityField& p, const OperatorWorkspace& ws);
/// Right-hand side for an absorbing grid; throws for a natural grid.
std::vector<double> rhs_absorbing(const DensityField& p, const OperatorWorkspace& ws);
/// Right-hand side for a natural grid; throws for an absorbing grid.
std::vector<double> rhs_natural(const DensityField& p, const OperatorWorkspace& ws);
std::vector<double> evaluate_rhs(const DensityField& p, const OperatorWorkspace& ws);

}  // namespace nlfp
