#include "nlfp/fft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlfp/simd.hpp"

namespace nlfp {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && std::has_single_bit(n); }

std::size_t next_power_of_two(std::size_t n) noexcept { return n <= 1 ? 1 : std::bit_ceil(n); }

FftPlan::FftPlan(std::size_t n) : n_(n), bitrev_(n), tw_fwd_(std::max<std::size_t>(n, 2)),
                                  tw_inv_(std::max<std::size_t>(n, 2)) {
    if (!is_power_of_two(n)) throw std::invalid_argument("FftPlan: size must be a power of two");
    const int bits = std::countr_zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
        bitrev_[i] = r;
    }
    for (std::size_t half = 1; half < n; half *= 2) {
        for (std::size_t k = 0; k < half; ++k) {
            const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(half);
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            tw_fwd_[half + k] = cplx(c, -s);
            tw_inv_[half + k] = cplx(c, s);
        }
    }
}

void FftPlan::run(std::span<cplx> data, const std::vector<cplx>& twiddles) const {
    if (data.size() != n_) throw std::invalid_argument("FftPlan: length mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    const auto& k = simd::kernels();
    for (std::size_t half = 1; half < n_; half *= 2) {
        k.butterfly_pass(data.data(), twiddles.data() + half, n_, half);
    }
}

void FftPlan::forward(std::span<cplx> data) const { run(data, tw_fwd_); }
void FftPlan::inverse(std::span<cplx> data) const { run(data, tw_inv_); }

RealFftPlan::RealFftPlan(std::size_t m) : m_(m), half_(m >= 2 ? m / 2 : 1), rot_(m / 2) {
    if (!is_power_of_two(m) || m < 2) {
        throw std::invalid_argument("RealFftPlan: size must be a power of two >= 2");
    }
    for (std::size_t k = 0; k < rot_.size(); ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        rot_[k] = cplx(std::cos(theta), -std::sin(theta));
    }
}

void RealFftPlan::forward(std::span<const double> x, std::span<cplx> spectrum,
                          std::span<cplx> work) const {
    const std::size_t k = half_.size();
    if (x.size() != m_ || spectrum.size() != k + 1 || work.size() != k) {
        throw std::invalid_argument("RealFftPlan::forward: length mismatch");
    }
    for (std::size_t n = 0; n < k; ++n) work[n] = cplx(x[2 * n], x[2 * n + 1]);
    half_.forward(work);

    spectrum[0] = cplx(work[0].real() + work[0].imag(), 0.0);
    spectrum[k] = cplx(work[0].real() - work[0].imag(), 0.0);
    for (std::size_t b = 1; b < k; ++b) {
        const cplx z = work[b];
        const cplx zc = std::conj(work[k - b]);
        const cplx even = 0.5 * (z + zc);
        const cplx odd = cplx(0.0, -0.5) * (z - zc);
        spectrum[b] = even + rot_[b] * odd;
    }
}

void RealFftPlan::inverse(std::span<const cplx> spectrum, std::span<double> x,
                          std::span<cplx> work) const {
    const std::size_t k = half_.size();
    if (x.size() != m_ || spectrum.size() != k + 1 || work.size() != k) {
        throw std::invalid_argument("RealFftPlan::inverse: length mismatch");
    }
    for (std::size_t b = 0; b < k; ++b) {
        const cplx xb = spectrum[b];
        const cplx xc = std::conj(spectrum[k - b]);
        const cplx even = 0.5 * (xb + xc);
        const cplx odd = 0.5 * (xb - xc) * std::conj(rot_[b]);
        work[b] = even + cplx(0.0, 1.0) * odd;
    }
    half_.inverse(work);
    for (std::size_t n = 0; n < k; ++n) {
        x[2 * n] = work[n].real();
        x[2 * n + 1] = work[n].imag();
    }
}

}  // namespace nlfp
