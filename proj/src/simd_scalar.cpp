#include "simd_kernels.hpp"

namespace nlfp::simd::detail {

namespace {

void butterfly_pass(cplx* data, const cplx* tw, std::size_t n, std::size_t half) {
    for (std::size_t s = 0; s < n; s += 2 * half) {
        cplx* a = data + s;
        cplx* b = a + half;
        for (std::size_t k = 0; k < half; ++k) {
            // Spelled out: std::complex operator* carries NaN-recovery branches.
            const double tr = tw[k].real() * b[k].real() - tw[k].imag() * b[k].imag();
            const double ti = tw[k].real() * b[k].imag() + tw[k].imag() * b[k].real();
            const cplx t(tr, ti);
            b[k] = a[k] - t;
            a[k] += t;
        }
    }
}

void scale_complex(cplx* z, const double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] *= s[i];
}

void combine2(double* out, double a, const double* x, double b, const double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void combine3(double* out, double a, const double* x, double b, const double* y, double c,
              const double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

void assemble(double* out, const double* p, const double* conv, const double* diag,
              const double* adv, double lap, double gain, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lap * (p[i - 1] + p[i + 1]) + gain * conv[i] - diag[i] * p[i];
    }
    if (adv) {
        for (std::size_t i = 0; i < n; ++i) out[i] += adv[i];
    }
}

void weno_plus(double* out, const double* phi, double h, double delta, std::size_t n) {
    const double inv2h = 0.5 / h;
    for (std::size_t i = 0; i < n; ++i) {
        const double d0 = phi[i - 1] - phi[i - 2];
        const double d1 = phi[i] - phi[i - 1];
        const double d2 = phi[i + 1] - phi[i];
        const double sl = d1 - d0;
        const double sc = d2 - d1;
        const double r = (delta + sl * sl) / (delta + sc * sc);
        const double w = 1.0 / (1.0 + 2.0 * r * r);
        out[i] = inv2h * (d1 + d2) - w * inv2h * (d0 - 2.0 * d1 + d2);
    }
}

void weno_minus(double* out, const double* phi, double h, double delta, std::size_t n) {
    const double inv2h = 0.5 / h;
    for (std::size_t i = 0; i < n; ++i) {
        const double e0 = phi[i] - phi[i - 1];
        const double e1 = phi[i + 1] - phi[i];
        const double e2 = phi[i + 2] - phi[i + 1];
        const double sr = e2 - e1;
        const double sc = e1 - e0;
        const double r = (delta + sr * sr) / (delta + sc * sc);
        const double w = 1.0 / (1.0 + 2.0 * r * r);
        out[i] = inv2h * (e0 + e1) - w * inv2h * (e2 - 2.0 * e1 + e0);
    }
}

}  // namespace

const KernelTable kScalarTable{
    Isa::Scalar, "scalar", butterfly_pass, scale_complex, combine2, combine3,
    assemble,    weno_plus, weno_minus,
};

}  // namespace nlfp::simd::detail
