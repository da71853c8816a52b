#include "driftwalk/simd/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace dwalk::simd {

const Kernels& kernels() {
    static const Kernels* chosen = [] {
        const char* env = std::getenv("DRIFTWALK_SIMD");
        const char* mode = env ? env : "auto";
        if (std::strcmp(mode, "scalar") == 0) return &scalar_kernels();
        const Kernels* avx2 = avx2_kernels();
        if (std::strcmp(mode, "avx2") == 0 && !avx2) {
            std::fprintf(stderr, "driftwalk: DRIFTWALK_SIMD=avx2 requested but CPU lacks "
                                 "AVX2; using scalar kernels\n");
            return &scalar_kernels();
        }
        return avx2 ? avx2 : &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace dwalk::simd
