// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "simd_kernels.hpp"

namespace nlfp::simd::detail {

namespace {

// (ar, ai, br, bi) pairs packed two complex values per register.
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d br = _mm256_movedup_pd(b);
    const __m256d bi = _mm256_permute_pd(b, 0xF);
    const __m256d as = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

void butterfly_pass(cplx* data, const cplx* tw, std::size_t n, std::size_t half) {
    if (half < 2) {
        kScalarTable.butterfly_pass(data, tw, n, half);
        return;
    }
    auto* d = reinterpret_cast<double*>(data);
    const auto* w = reinterpret_cast<const double*>(tw);
    for (std::size_t s = 0; s < n; s += 2 * half) {
        double* a = d + 2 * s;
        double* b = a + 2 * half;
        for (std::size_t k = 0; k < half; k += 2) {
            const __m256d va = _mm256_loadu_pd(a + 2 * k);
            const __m256d vb = _mm256_loadu_pd(b + 2 * k);
            const __m256d t = cmul(vb, _mm256_loadu_pd(w + 2 * k));
            _mm256_storeu_pd(a + 2 * k, _mm256_add_pd(va, t));
            _mm256_storeu_pd(b + 2 * k, _mm256_sub_pd(va, t));
        }
    }
}

void scale_complex(cplx* z, const double* s, std::size_t n) {
    auto* d = reinterpret_cast<double*>(z);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // (s0, s0, s1, s1)
        const __m128d pair = _mm_loadu_pd(s + i);
        const __m256d sc = _mm256_permute4x64_pd(_mm256_castpd128_pd256(pair), 0x50);
        _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * i), sc));
    }
    for (; i < n; ++i) z[i] *= s[i];
}

void combine2(double* out, double a, const double* x, double b, const double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i),
                                          _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void combine3(double* out, double a, const double* x, double b, const double* y, double c,
              const double* z, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        r = _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), r);
        r = _mm256_fmadd_pd(vc, _mm256_loadu_pd(z + i), r);
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

void assemble(double* out, const double* p, const double* conv, const double* diag,
              const double* adv, double lap, double gain, std::size_t n) {
    const __m256d vl = _mm256_set1_pd(lap);
    const __m256d vg = _mm256_set1_pd(gain);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d nb = _mm256_add_pd(_mm256_loadu_pd(p + i - 1), _mm256_loadu_pd(p + i + 1));
        __m256d r = _mm256_fmadd_pd(vg, _mm256_loadu_pd(conv + i), _mm256_mul_pd(vl, nb));
        r = _mm256_fnmadd_pd(_mm256_loadu_pd(diag + i), _mm256_loadu_pd(p + i), r);
        if (adv) r = _mm256_add_pd(r, _mm256_loadu_pd(adv + i));
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) {
        out[i] = lap * (p[i - 1] + p[i + 1]) + gain * conv[i] - diag[i] * p[i];
        if (adv) out[i] += adv[i];
    }
}

inline __m256d weno_correction(__m256d third, __m256d s_side, __m256d s_center, __m256d delta) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d num = _mm256_fmadd_pd(s_side, s_side, delta);
    const __m256d den = _mm256_fmadd_pd(s_center, s_center, delta);
    const __m256d r = _mm256_div_pd(num, den);
    const __m256d w = _mm256_div_pd(one, _mm256_fmadd_pd(two, _mm256_mul_pd(r, r), one));
    return _mm256_mul_pd(w, third);
}

void weno_plus(double* out, const double* phi, double h, double delta, std::size_t n) {
    const double inv2h = 0.5 / h;
    const __m256d vh = _mm256_set1_pd(inv2h);
    const __m256d vd = _mm256_set1_pd(delta);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d pm2 = _mm256_loadu_pd(phi + i - 2);
        const __m256d pm1 = _mm256_loadu_pd(phi + i - 1);
        const __m256d p0 = _mm256_loadu_pd(phi + i);
        const __m256d pp1 = _mm256_loadu_pd(phi + i + 1);
        const __m256d d0 = _mm256_sub_pd(pm1, pm2);
        const __m256d d1 = _mm256_sub_pd(p0, pm1);
        const __m256d d2 = _mm256_sub_pd(pp1, p0);
        const __m256d third = _mm256_add_pd(_mm256_fnmadd_pd(two, d1, d0), d2);
        const __m256d corr = weno_correction(third, _mm256_sub_pd(d1, d0), _mm256_sub_pd(d2, d1), vd);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vh, _mm256_sub_pd(_mm256_add_pd(d1, d2), corr)));
    }
    if (i < n) kScalarTable.weno_plus(out + i, phi + i, h, delta, n - i);
}

void weno_minus(double* out, const double* phi, double h, double delta, std::size_t n) {
    const double inv2h = 0.5 / h;
    const __m256d vh = _mm256_set1_pd(inv2h);
    const __m256d vd = _mm256_set1_pd(delta);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d pm1 = _mm256_loadu_pd(phi + i - 1);
        const __m256d p0 = _mm256_loadu_pd(phi + i);
        const __m256d pp1 = _mm256_loadu_pd(phi + i + 1);
        const __m256d pp2 = _mm256_loadu_pd(phi + i + 2);
        const __m256d e0 = _mm256_sub_pd(p0, pm1);
        const __m256d e1 = _mm256_sub_pd(pp1, p0);
        const __m256d e2 = _mm256_sub_pd(pp2, pp1);
        const __m256d third = _mm256_add_pd(_mm256_fnmadd_pd(two, e1, e2), e0);
        const __m256d corr = weno_correction(third, _mm256_sub_pd(e2, e1), _mm256_sub_pd(e1, e0), vd);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vh, _mm256_sub_pd(_mm256_add_pd(e0, e1), corr)));
    }
    if (i < n) kScalarTable.weno_minus(out + i, phi + i, h, delta, n - i);
}

}  // namespace

const KernelTable kAvx2Table{
    Isa::Avx2, "avx2", butterfly_pass, scale_complex, combine2, combine3,
    assemble,  weno_plus, weno_minus,
};

}  // namespace nlfp::simd::detail
