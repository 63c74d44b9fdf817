#include "nlfp/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlfp/simd.hpp"

namespace nlfp {

SymmetricToeplitz::SymmetricToeplitz(std::vector<double> first_col) : col_(std::move(first_col)) {
    if (col_.empty()) throw std::invalid_argument("Toeplitz kernel needs at least one entry");
    for (double c : col_) {
        if (!std::isfinite(c)) throw std::invalid_argument("Toeplitz kernel entries must be finite");
    }
}

void matvec_naive(const SymmetricToeplitz& t, std::span<const double> v, std::span<double> out) {
    const std::size_t n = t.size();
    if (v.size() != n || out.size() != n) throw std::invalid_argument("matvec_naive: length mismatch");
    const auto c = t.first_column();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += c[i > j ? i - j : j - i] * v[j];
        out[i] = acc;
    }
}

std::vector<double> matvec_naive(const SymmetricToeplitz& t, std::span<const double> v) {
    std::vector<double> out(t.size());
    matvec_naive(t, v, out);
    return out;
}

namespace {

std::size_t embedding_size_for(std::size_t n) {
    return std::max<std::size_t>(4, next_power_of_two(2 * n - 1));
}

}  // namespace

PreparedToeplitz::PreparedToeplitz(const SymmetricToeplitz& t)
    : n_(t.size()), plan_(embedding_size_for(t.size())) {
    const std::size_t m = plan_.size();
    const auto c = t.first_column();
    std::vector<double> embedded(m, 0.0);
    embedded[0] = c[0];
    for (std::size_t k = 1; k < n_; ++k) {
        embedded[k] = c[k];
        embedded[m - k] = c[k];
    }
    std::vector<cplx> spectrum(plan_.bins());
    std::vector<cplx> work(plan_.half_size());
    plan_.forward(embedded, spectrum, work);
    // The embedded column is real and even, so its spectrum is real.
    eigen_.resize(spectrum.size());
    const double scale = 2.0 / static_cast<double>(m);
    for (std::size_t b = 0; b < spectrum.size(); ++b) eigen_[b] = spectrum[b].real() * scale;
}

ToeplitzScratch PreparedToeplitz::make_scratch() const {
    return ToeplitzScratch{std::vector<double>(plan_.size()), std::vector<cplx>(plan_.bins()),
                           std::vector<cplx>(plan_.half_size())};
}

void PreparedToeplitz::apply(std::span<const double> v, std::span<double> out,
                             ToeplitzScratch& scratch) const {
    if (v.size() != n_ || out.size() != n_) throw std::invalid_argument("Toeplitz apply: length mismatch");
    if (scratch.padded.size() != plan_.size()) scratch = make_scratch();

    std::copy(v.begin(), v.end(), scratch.padded.begin());
    std::fill(scratch.padded.begin() + static_cast<std::ptrdiff_t>(n_), scratch.padded.end(), 0.0);
    plan_.forward(scratch.padded, scratch.spectrum, scratch.work);
    simd::kernels().scale_complex(scratch.spectrum.data(), eigen_.data(), eigen_.size());
    plan_.inverse(scratch.spectrum, scratch.padded, scratch.work);
    std::copy_n(scratch.padded.begin(), n_, out.begin());
}

std::vector<double> PreparedToeplitz::apply(std::span<const double> v) const {
    auto scratch = make_scratch();
    std::vector<double> out(n_);
    apply(v, out, scratch);
    return out;
}

std::vector<double> matvec_fft(const SymmetricToeplitz& t, std::span<const double> v) {
    if (v.size() != t.size()) throw std::invalid_argument("matvec_fft: length mismatch");
    return PreparedToeplitz(t).apply(v);
}

}  // namespace nlfp
