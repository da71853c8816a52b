#pragma once

#include <array>
#include <string>
#include <vector>

#include "driftwalk/spectral.hpp"

namespace dwalk {

struct DimsMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Drift covariance spectrum Chat_{ij}(p) = L^{-d} conj(Phihat_i(p)) Phihat_j(p),
/// spatially averaged per realization; ensemble mode averages realizations.
/// Hermitian PSD at every frequency by construction.
struct CovarianceSpectrum {
    Lattice lat;
    int realizations = 0;
    // chat[i*d+j] is the length-L^d frequency array for component (i,j).
    std::vector<std::vector<cplx>> chat;

    explicit CovarianceSpectrum(Lattice l)
        : lat(l),
          chat(static_cast<std::size_t>(l.dim() * l.dim()),
               std::vector<cplx>(static_cast<std::size_t>(l.nsites()), cplx{0, 0})) {}

    [[nodiscard]] const std::vector<cplx>& component(int i, int j) const {
        return chat[static_cast<std::size_t>(i * lat.dim() + j)];
    }
    /// Worst negative eigenvalue of Chat(p) over p, relative to its trace
    /// (>= -1e-10 for anything built here).
    [[nodiscard]] double min_eigenvalue_margin() const;
};

CovarianceSpectrum covariance_spectrum(const DriftField& env);
CovarianceSpectrum covariance_spectrum(const std::vector<DriftField>& envs);

/// H_-1 functional on the torus. Ctilde_{ij} = (2/L^d) sum_{p != 0} Chat_{ij}(p)/Dhat(p),
/// symmetrized real part. `net_drift_warning` is set when Chat(0) != 0.
struct HminusResult {
    std::vector<std::vector<double>> ctilde;  // d x d
    double trace = 0.0;
    double min_eigenvalue = 0.0;
    bool net_drift_warning = false;
    double chat_zero_norm = 0.0;
};

HminusResult hminus_functional(const CovarianceSpectrum& spec);

/// Per-direction squared H_-1 norms ||(2Dhat)^{-1/2} Vhat_k||^2 with the
/// L^{-d}-normalized inner product; indexed by Direction::index(). An
/// L-indexed diagnostic: growth along L flags H_-1 failure in the
/// infinite-volume limit.
std::vector<double> hminus_norms(const DriftField& v);

/// Residuals of the spectral identities obeyed by Bhat_{k,l}(p) =
/// L^{-d} conj(Vhat_k(p)) Vhat_l(p) for any admissible drift field:
///   shift:      Bhat_{k,l}(p) + e^{i p.k} Bhat_{-k,l}(p) = 0    (and in l)
///   divergence: sum_k Bhat_{k,l}(p) = 0 = sum_l Bhat_{k,l}(p)
///   factorized: sum_{k,l} (1-e^{-i p.k})(1-e^{i p.l}) Bhat_{k,l}(p) = 0
///   zero mode:  sum_{k,l} k_i l_j Bhat_{k,l}(0) = 0
struct IdentityReport {
    double shift_residual = 0.0;
    double divfree_residual = 0.0;
    double factorized_residual = 0.0;
    double czero_residual = 0.0;
    std::int64_t worst_freq = -1;

    [[nodiscard]] bool pass(double tol = 1e-10) const {
        return shift_residual <= tol && divfree_residual <= tol &&
               factorized_residual <= tol && czero_residual <= tol;
    }
};

/// `dirs` holds the 2d expanded direction fields, indexed by
/// Direction::index(); tests may pass deliberately broken fields.
IdentityReport check_spectral_identities(const Lattice& lat,
                                         const std::vector<std::vector<double>>& dirs);
IdentityReport check_spectral_identities(const DriftField& v);

/// Symmetric eigenvalues (ascending) of a small d x d matrix.
std::vector<double> sym_eigenvalues(const std::vector<std::vector<double>>& m);

}  // namespace dwalk
