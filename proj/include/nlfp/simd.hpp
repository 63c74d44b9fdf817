#pragma once

// Data-parallel inner loops used by the FFT, the operator assembly and the
// time integrators. Every kernel has a portable scalar reference variant and,
// on x86-64, an AVX2/FMA variant; the variant is chosen once at startup from
// the CPU features (override with NLFP_SIMD=scalar|avx2).

#include <complex>
#include <cstddef>
#include <string_view>

namespace nlfp::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    Isa isa;
    const char* name;

    /// One radix-2 DIT pass over n points with butterflies of span `half`.
    /// `tw` holds the `half` twiddles of the pass.
    void (*butterfly_pass)(cplx* data, const cplx* tw, std::size_t n, std::size_t half);

    /// z[k] *= s[k]
    void (*scale_complex)(cplx* z, const double* s, std::size_t n);

    /// out[i] = a x[i] + b y[i]
    void (*combine2)(double* out, double a, const double* x, double b, const double* y,
                     std::size_t n);

    /// out[i] = a x[i] + b y[i] + c z[i]
    void (*combine3)(double* out, double a, const double* x, double b, const double* y,
                     double c, const double* z, std::size_t n);

    /// out[i] = lap (p[i-1] + p[i+1]) + gain conv[i] - diag[i] p[i] (+ adv[i] if non-null).
    /// p[-1] and p[n] must be readable.
    void (*assemble)(double* out, const double* p, const double* conv, const double* diag,
                     const double* adv, double lap, double gain, std::size_t n);

    /// Left-biased WENO3 derivative at i = 0..n-1; reads phi[-2 .. n].
    void (*weno_plus)(double* out, const double* phi, double h, double delta, std::size_t n);

    /// Right-biased WENO3 derivative at i = 0..n-1; reads phi[-1 .. n+1].
    void (*weno_minus)(double* out, const double* phi, double h, double delta, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable* avx2_kernels() noexcept;

/// Currently selected table.
const KernelTable& kernels() noexcept;

/// Selects the active variant; returns false if it is unavailable.
bool select(Isa isa) noexcept;

Isa best_available() noexcept;
std::string_view isa_name(Isa isa) noexcept;

}  // namespace nlfp::simd
