#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlfp/fft.hpp"

namespace nlfp {

/// Symmetric Toeplitz matrix T[i][j] = c[|i - j|] given by its first column.
class SymmetricToeplitz {
public:
    explicit SymmetricToeplitz(std::vector<double> first_col);

    std::size_t size() const noexcept { return col_.size(); }
    std::span<const double> first_column() const noexcept { return col_; }

private:
    std::vector<double> col_;
};

/// Reference O(N^2) product.
std::vector<double> matvec_naive(const SymmetricToeplitz& t, std::span<const double> v);
void matvec_naive(const SymmetricToeplitz& t, std::span<const double> v, std::span<double> out);

/// Per-call buffers for PreparedToeplitz::apply. One per thread.
struct ToeplitzScratch {
    std::vector<double> padded;
    std::vector<cplx> spectrum;
    std::vector<cplx> work;
};

/// Circulant embedding of a symmetric Toeplitz matrix, transformed once.
/// The embedding size is the next power of two >= 2N - 1 (at least 4).
/// Immutable after construction; apply() is re-entrant given distinct scratch.
class PreparedToeplitz {
public:
    explicit PreparedToeplitz(const SymmetricToeplitz& t);

    std::size_t size() const noexcept { return n_; }
    std::size_t embedding_size() const noexcept { return plan_.size(); }

    ToeplitzScratch make_scratch() const;
    void apply(std::span<const double> v, std::span<double> out, ToeplitzScratch& scratch) const;
    std::vector<double> apply(std::span<const double> v) const;

private:
    std::size_t n_;
    RealFftPlan plan_;
    std::vector<double> eigen_;  // circulant eigenvalues, bins 0..M/2, scaled by 2/M
};

/// One-shot fast product (prepares the kernel on every call).
std::vector<double> matvec_fft(const SymmetricToeplitz& t, std::span<const double> v);

}  // namespace nlfp
