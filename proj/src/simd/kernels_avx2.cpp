#include "driftwalk/simd/kernels.hpp"

// AVX2 backend. Mul and add stay separate instructions (no FMA) and the
// reduction combine matches the scalar reference exactly; see kernels.hpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace dwalk::simd {
namespace {

inline double hsum(__m256d v) {
    // ((l0+l2)+(l1+l3)): low128+high128 pairs lanes {0,2} and {1,3}.
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);  // [l0+l2, l1+l3]
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

void scale_avx2(double* out, const double* a, double c, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vc, _mm256_loadu_pd(a + i)));
    for (; i < n; ++i) out[i] = c * a[i];
}

void mul_avx2(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i,
                         _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void acc_avx2(double* out, const double* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i,
                         _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_loadu_pd(a + i)));
    for (; i < n; ++i) out[i] += a[i];
}

void mul_acc_avx2(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), prod));
    }
    for (; i < n; ++i) out[i] = out[i] + a[i] * b[i];
}

// One __m256d holds two complex doubles as [re0, im0, re1, im1].
void cmul_inplace_avx2(std::complex<double>* a, const std::complex<double>* m,
                       std::size_t n) {
    auto* pa = reinterpret_cast<double*>(a);
    const auto* pm = reinterpret_cast<const double*>(m);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vm = _mm256_loadu_pd(pm + 2 * i);
        const __m256d mr = _mm256_movedup_pd(vm);           // [mr, mr]
        const __m256d mi = _mm256_permute_pd(vm, 0b1111);   // [mi, mi]
        const __m256d as = _mm256_permute_pd(va, 0b0101);   // [ai, ar]
        const __m256d t0 = _mm256_mul_pd(va, mr);           // [ar*mr, ai*mr]
        const __m256d t1 = _mm256_mul_pd(as, mi);           // [ai*mi, ar*mi]
        _mm256_storeu_pd(pa + 2 * i, _mm256_addsub_pd(t0, t1));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double mr = m[i].real(), mi = m[i].imag();
        a[i] = {ar * mr - ai * mi, ai * mr + ar * mi};
    }
}

void conj_mul_acc_avx2(std::complex<double>* acc, const std::complex<double>* a,
                       const std::complex<double>* b, std::size_t n) {
    auto* pc = reinterpret_cast<double*>(acc);
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);  // negate imag lanes
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_xor_pd(_mm256_loadu_pd(pa + 2 * i), conj_mask);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d br = _mm256_movedup_pd(vb);
        const __m256d bi = _mm256_permute_pd(vb, 0b1111);
        const __m256d as = _mm256_permute_pd(va, 0b0101);
        const __m256d t0 = _mm256_mul_pd(va, br);  // [ar*br, -ai*br]
        const __m256d t1 = _mm256_mul_pd(as, bi);  // [-ai*bi, ar*bi]
        const __m256d prod = _mm256_addsub_pd(t0, t1);  // [ar*br+ai*bi, ar*bi-ai*br]
        _mm256_storeu_pd(pc + 2 * i, _mm256_add_pd(_mm256_loadu_pd(pc + 2 * i), prod));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        acc[i] = {acc[i].real() + (ar * br + ai * bi),
                  acc[i].imag() + (ar * bi - ai * br)};
    }
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d v = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) v = _mm256_add_pd(v, _mm256_loadu_pd(a + i));
    double s = hsum(v);
    for (std::size_t i = n4; i < n; ++i) s += a[i];
    return s;
}

double sumsq_avx2(const double* a, std::size_t n) {
    __m256d v = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d x = _mm256_loadu_pd(a + i);
        v = _mm256_add_pd(v, _mm256_mul_pd(x, x));
    }
    double s = hsum(v);
    for (std::size_t i = n4; i < n; ++i) s += a[i] * a[i];
    return s;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d v = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4)
        v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double s = hsum(v);
    for (std::size_t i = n4; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

const Kernels* avx2_kernels() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Kernels k{
        "avx2",           scale_avx2, mul_avx2,  acc_avx2, mul_acc_avx2,
        cmul_inplace_avx2, conj_mul_acc_avx2, sum_avx2, sumsq_avx2, dot_avx2,
    };
    return &k;
}

}  // namespace dwalk::simd

#else

namespace dwalk::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace dwalk::simd

#endif
