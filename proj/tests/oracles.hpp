#pragma once

// Test-only reference implementations. Everything here is deliberately
// naive (O(L^{2d}) sums, direct enumeration) and independent of the code
// paths it checks.

#include <cmath>
#include <complex>
#include <vector>

#include "driftwalk/covariance.hpp"
#include "driftwalk/fields.hpp"

namespace oracle {

using dwalk::cplx;
using dwalk::Lattice;

/// fhat(p_m) = sum_x e^{+i p.x} f(x) by direct double summation.
inline std::vector<cplx> naive_dft(const Lattice& lat, const std::vector<double>& f) {
    const auto n = lat.nsites();
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (std::int64_t m = 0; m < n; ++m) {
        cplx acc{0, 0};
        for (std::int64_t x = 0; x < n; ++x) {
            double phase = 0;
            for (int a = 0; a < lat.dim(); ++a)
                phase += (2.0 * M_PI * lat.coord(m, a) / lat.side()) * lat.coord(x, a);
            acc += f[static_cast<std::size_t>(x)] * cplx{std::cos(phase), std::sin(phase)};
        }
        out[static_cast<std::size_t>(m)] = acc;
    }
    return out;
}

/// Ctilde trace by mode-by-mode summation over naive DFTs of phi.
inline double naive_ctilde_trace(const dwalk::DriftField& v) {
    const Lattice& lat = v.lattice();
    const int d = lat.dim();
    std::vector<std::vector<cplx>> phihat(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::vector<double> phi(static_cast<std::size_t>(lat.nsites()));
        for (std::int64_t x = 0; x < lat.nsites(); ++x)
            phi[static_cast<std::size_t>(x)] = v.value(x, {i, +1}) - v.value(x, {i, -1});
        phihat[static_cast<std::size_t>(i)] = naive_dft(lat, phi);
    }
    double acc = 0.0;
    for (std::int64_t p = 1; p < lat.nsites(); ++p) {
        double dh = 0.0;
        for (int a = 0; a < lat.dim(); ++a)
            dh += 1.0 - std::cos(2.0 * M_PI * lat.coord(p, a) / lat.side());
        double chat = 0.0;
        for (int i = 0; i < d; ++i)
            chat += std::norm(phihat[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]) /
                    static_cast<double>(lat.nsites());
        acc += chat / dh;
    }
    return 2.0 * acc / static_cast<double>(lat.nsites());
}

/// Full Ctilde matrix by the same naive route.
inline std::vector<std::vector<double>> naive_ctilde(const dwalk::DriftField& v) {
    const Lattice& lat = v.lattice();
    const int d = lat.dim();
    std::vector<std::vector<cplx>> phihat(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::vector<double> phi(static_cast<std::size_t>(lat.nsites()));
        for (std::int64_t x = 0; x < lat.nsites(); ++x)
            phi[static_cast<std::size_t>(x)] = v.value(x, {i, +1}) - v.value(x, {i, -1});
        phihat[static_cast<std::size_t>(i)] = naive_dft(lat, phi);
    }
    std::vector<std::vector<double>> ct(static_cast<std::size_t>(d),
                                        std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (std::int64_t p = 1; p < lat.nsites(); ++p) {
        double dh = 0.0;
        for (int a = 0; a < lat.dim(); ++a)
            dh += 1.0 - std::cos(2.0 * M_PI * lat.coord(p, a) / lat.side());
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const cplx c = std::conj(phihat[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]) *
                               phihat[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)] /
                               static_cast<double>(lat.nsites());
                ct[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    2.0 * (c / dh).real() / static_cast<double>(lat.nsites());
            }
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double s = 0.5 * (ct[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                    ct[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            ct[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
            ct[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = s;
        }
    return ct;
}

/// Exact finite-horizon value of the scenery functional
/// T^{-1} E|int_0^T Phi(S(t)) dt|^2 for the rate-(1/2 per direction) walk:
/// (2/L^d) sum_{p!=0} tr Chat(p) * g_T(Dhat(p)), g_T(l) = 1/l - (1-e^{-lT})/(T l^2).
inline double exact_rwrs_value(const dwalk::DriftField& v, double T) {
    const Lattice& lat = v.lattice();
    const int d = lat.dim();
    std::vector<std::vector<cplx>> phihat(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::vector<double> phi(static_cast<std::size_t>(lat.nsites()));
        for (std::int64_t x = 0; x < lat.nsites(); ++x)
            phi[static_cast<std::size_t>(x)] = v.value(x, {i, +1}) - v.value(x, {i, -1});
        phihat[static_cast<std::size_t>(i)] = naive_dft(lat, phi);
    }
    double acc = 0.0;
    for (std::int64_t p = 1; p < lat.nsites(); ++p) {
        double dh = 0.0;
        for (int a = 0; a < lat.dim(); ++a)
            dh += 1.0 - std::cos(2.0 * M_PI * lat.coord(p, a) / lat.side());
        double chat = 0.0;
        for (int i = 0; i < d; ++i)
            chat += std::norm(phihat[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]) /
                    static_cast<double>(lat.nsites());
        const double g = 1.0 / dh - (1.0 - std::exp(-dh * T)) / (T * dh * dh);
        acc += chat * g;
    }
    return 2.0 * acc / static_cast<double>(lat.nsites());
}

}  // namespace oracle
