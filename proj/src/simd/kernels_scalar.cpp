#include "driftwalk/simd/kernels.hpp"

// Reference backend. The reductions mimic the 4-lane vector layout so the
// AVX2 backend can reproduce them bit-for-bit: lane j accumulates elements
// j, j+4, j+8, ... and the lanes combine as ((l0+l2)+(l1+l3)), then the
// remainder is folded in sequentially.

namespace dwalk::simd {
namespace {

void scale_scalar(double* out, const double* a, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = c * a[i];
}

void mul_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void acc_scalar(double* out, const double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += a[i];
}

void mul_acc_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + a[i] * b[i];
}

void cmul_inplace_scalar(std::complex<double>* a, const std::complex<double>* m,
                         std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double mr = m[i].real(), mi = m[i].imag();
        a[i] = {ar * mr - ai * mi, ai * mr + ar * mi};
    }
}

void conj_mul_acc_scalar(std::complex<double>* acc, const std::complex<double>* a,
                         const std::complex<double>* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        acc[i] = {acc[i].real() + (ar * br + ai * bi),
                  acc[i].imag() + (ar * bi - ai * br)};
    }
}

double sum_scalar(const double* a, std::size_t n) {
    double l0 = 0, l1 = 0, l2 = 0, l3 = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        l0 += a[i];
        l1 += a[i + 1];
        l2 += a[i + 2];
        l3 += a[i + 3];
    }
    double s = (l0 + l2) + (l1 + l3);
    for (std::size_t i = n4; i < n; ++i) s += a[i];
    return s;
}

double sumsq_scalar(const double* a, std::size_t n) {
    double l0 = 0, l1 = 0, l2 = 0, l3 = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        l0 += a[i] * a[i];
        l1 += a[i + 1] * a[i + 1];
        l2 += a[i + 2] * a[i + 2];
        l3 += a[i + 3] * a[i + 3];
    }
    double s = (l0 + l2) + (l1 + l3);
    for (std::size_t i = n4; i < n; ++i) s += a[i] * a[i];
    return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double l0 = 0, l1 = 0, l2 = 0, l3 = 0;
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        l0 += a[i] * b[i];
        l1 += a[i + 1] * b[i + 1];
        l2 += a[i + 2] * b[i + 2];
        l3 += a[i + 3] * b[i + 3];
    }
    double s = (l0 + l2) + (l1 + l3);
    for (std::size_t i = n4; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{
        "scalar",          scale_scalar, mul_scalar,  acc_scalar, mul_acc_scalar,
        cmul_inplace_scalar, conj_mul_acc_scalar, sum_scalar, sumsq_scalar, dot_scalar,
    };
    return k;
}

double norm2_cplx(const Kernels& k, const std::complex<double>* a, std::size_t n) {
    return k.sumsq(reinterpret_cast<const double*>(a), 2 * n);
}

}  // namespace dwalk::simd
