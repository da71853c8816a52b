#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "driftwalk/fields.hpp"

namespace dwalk {

using cplx = std::complex<double>;

struct NotMeanZeroError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex Fourier coefficients of a lattice field, indexed like sites:
/// flat index m encodes the frequency p = 2*pi*m/L componentwise.
struct SpectralField {
    Lattice lat;
    std::vector<cplx> coeffs;

    explicit SpectralField(Lattice l)
        : lat(l), coeffs(static_cast<std::size_t>(l.nsites()), cplx{0.0, 0.0}) {}
};

/// Convention: fhat(p) = sum_x e^{+i p.x} f(x), f(x) = L^{-d} sum_p e^{-i p.x} fhat(p).
SpectralField dft(const ScalarLatticeField& f);
ScalarLatticeField idft(const SpectralField& F);

/// Raw transforms on complex buffers (used by the operators below).
void dft_raw(const Lattice& lat, const cplx* in, cplx* out);
void idft_raw(const Lattice& lat, const cplx* in, cplx* out);

/// p components of the flat frequency index.
inline double freq_component(const Lattice& lat, std::int64_t m, int axis) {
    return 2.0 * M_PI * lat.coord(m, axis) / lat.side();
}

/// Gradient multiplier m_k(p) = e^{-i p.k} - 1.
cplx grad_multiplier(const Lattice& lat, std::int64_t m, Direction k);

/// Dhat(p) = sum_j (1 - cos p_j); the lattice Laplacian multiplier is -2*Dhat.
double dhat(const Lattice& lat, std::int64_t m);
std::vector<double> dhat_table(const Lattice& lat);

/// Riesz operator: multiplier m_k(p) / sqrt(2 Dhat(p)), zero at p = 0.
/// Contraction on the mean-zero subspace. Throws NotMeanZero when the input
/// has a nonzero mean.
ScalarLatticeField riesz(Direction k, const ScalarLatticeField& f);

/// |Laplacian|^{-1/2}: multiplier (2 Dhat(p))^{-1/2}, zero at p = 0.
ScalarLatticeField inv_sqrt_lap(const ScalarLatticeField& f);

/// |Laplacian|^{+1/2}.
ScalarLatticeField sqrt_lap(const ScalarLatticeField& f);

/// Stream tensor of a valid zero-mean drift field:
///   hhat_{ij}(p) = [m_{e_i}(p) vhat_j(p) - m_{e_j}(p) vhat_i(p)] / (2 Dhat(p)),
/// which satisfies the tensor shift symmetries and curl(h) = v.
/// Throws ValidationError via validate_drift when v is invalid.
StreamTensorField helmholtz(const DriftField& v);

/// Forward transforms of all 2d expanded direction fields V_k (each taken
/// independently, so the algebraic identities between them stay testable).
std::vector<std::vector<cplx>> direction_spectra(const DriftField& v);

}  // namespace dwalk
