#pragma once

#include <complex>
#include <cstddef>

namespace dwalk::simd {

/// Hot inner-loop kernels with interchangeable scalar and vector backends.
///
/// Both backends evaluate the *same* operation tree: no FMA contraction and
/// reductions use a fixed 4-lane blocking with the combine order
/// ((l0+l2)+(l1+l3)) followed by a sequential tail. Results are therefore
/// bit-identical across backends; the equivalence tests assert exact
/// equality, and run-to-run determinism does not depend on which backend
/// the dispatcher picks.
struct Kernels {
    const char* name;

    // elementwise
    void (*scale)(double* out, const double* a, double c, std::size_t n);        // out = c*a
    void (*mul)(double* out, const double* a, const double* b, std::size_t n);   // out = a.*b
    void (*acc)(double* out, const double* a, std::size_t n);                    // out += a
    void (*mul_acc)(double* out, const double* a, const double* b, std::size_t n);  // out += a.*b
    void (*cmul_inplace)(std::complex<double>* a, const std::complex<double>* m,
                         std::size_t n);                                          // a[i] *= m[i]
    void (*conj_mul_acc)(std::complex<double>* acc, const std::complex<double>* a,
                         const std::complex<double>* b, std::size_t n);  // acc += conj(a).*b

    // blocked reductions
    double (*sum)(const double* a, std::size_t n);
    double (*sumsq)(const double* a, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
};

/// Scalar reference backend (always available).
const Kernels& scalar_kernels();

/// AVX2 backend, or nullptr when the CPU lacks AVX2 (or non-x86 build).
const Kernels* avx2_kernels();

/// Backend chosen at first use: AVX2 when available, else scalar.
/// DRIFTWALK_SIMD=scalar|avx2|auto overrides (avx2 falls back to scalar with
/// a note on stderr if the CPU cannot run it).
const Kernels& kernels();

/// |a|^2 summed; reuses the real sumsq over the interleaved layout.
double norm2_cplx(const Kernels& k, const std::complex<double>* a, std::size_t n);

}  // namespace dwalk::simd
