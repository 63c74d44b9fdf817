#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlfp {

using cplx = std::complex<double>;

/// Iterative radix-2 complex FFT of a fixed power-of-two length.
/// Unnormalised in both directions.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    void forward(std::span<cplx> data) const;
    void inverse(std::span<cplx> data) const;

private:
    void run(std::span<cplx> data, const std::vector<cplx>& twiddles) const;

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    // Pass with butterfly span `half` reads twiddles [half, 2 half).
    std::vector<cplx> tw_fwd_;
    std::vector<cplx> tw_inv_;
};

/// Real-input FFT of length m = 2k via one complex FFT of length k.
/// The spectrum is returned as bins 0..k (k + 1 values); the rest follow
/// from Hermitian symmetry.
class RealFftPlan {
public:
    explicit RealFftPlan(std::size_t m);

    std::size_t size() const noexcept { return m_; }
    std::size_t bins() const noexcept { return half_.size() + 1; }

    /// x (length m) -> X (length bins()). `work` needs half_size() entries.
    void forward(std::span<const double> x, std::span<cplx> spectrum, std::span<cplx> work) const;

    /// X (bins 0..k, Hermitian) -> x scaled by k, i.e. m/2 times the inverse DFT.
    void inverse(std::span<const cplx> spectrum, std::span<double> x, std::span<cplx> work) const;

    std::size_t half_size() const noexcept { return half_.size(); }

private:
    std::size_t m_;
    FftPlan half_;
    std::vector<cplx> rot_;  // exp(-2 pi i k / m), k < m/2
};

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

}  // namespace nlfp
