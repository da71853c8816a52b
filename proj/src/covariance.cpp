#include "driftwalk/covariance.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "driftwalk/simd/kernels.hpp"

namespace dwalk {

namespace {

// Phihat_i(p) for all components of one realization.
std::vector<std::vector<cplx>> drift_vector_spectra(const DriftField& env) {
    const Lattice& lat = env.lattice();
    const int d = lat.dim();
    const auto n = static_cast<std::size_t>(lat.nsites());
    std::vector<std::vector<cplx>> phihat(static_cast<std::size_t>(d));
    std::vector<cplx> buf(n);
    for (int i = 0; i < d; ++i) {
        for (std::int64_t x = 0; x < lat.nsites(); ++x)
            buf[static_cast<std::size_t>(x)] =
                cplx{env.value(x, {i, +1}) - env.value(x, {i, -1}), 0.0};
        phihat[static_cast<std::size_t>(i)].resize(n);
        dft_raw(lat, buf.data(), phihat[static_cast<std::size_t>(i)].data());
    }
    return phihat;
}

void accumulate_realization(CovarianceSpectrum& spec, const DriftField& env) {
    if (!(env.lattice() == spec.lat))
        throw DimsMismatchError("covariance_spectrum: environment dims mismatch");
    const int d = spec.lat.dim();
    const auto n = static_cast<std::size_t>(spec.lat.nsites());
    const auto phihat = drift_vector_spectra(env);
    const auto& k = simd::kernels();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            k.conj_mul_acc(spec.chat[static_cast<std::size_t>(i * d + j)].data(),
                           phihat[static_cast<std::size_t>(i)].data(),
                           phihat[static_cast<std::size_t>(j)].data(), n);
    spec.realizations += 1;
}

void finalize(CovarianceSpectrum& spec) {
    const double scale =
        1.0 / (static_cast<double>(spec.lat.nsites()) * std::max(1, spec.realizations));
    const auto& k = simd::kernels();
    for (auto& comp : spec.chat) {
        auto* d = reinterpret_cast<double*>(comp.data());
        k.scale(d, d, scale, 2 * comp.size());
    }
}

}  // namespace

double CovarianceSpectrum::min_eigenvalue_margin() const {
    const int d = lat.dim();
    double worst = 0.0;
    Eigen::MatrixXcd m(d, d);
    for (std::int64_t p = 0; p < lat.nsites(); ++p) {
        double tr = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j)
                m(i, j) = component(i, j)[static_cast<std::size_t>(p)];
            tr += m(i, i).real();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
        const double lam = es.eigenvalues().minCoeff();
        if (tr > 0) worst = std::min(worst, lam / tr);
    }
    return worst;
}

CovarianceSpectrum covariance_spectrum(const DriftField& env) {
    CovarianceSpectrum spec(env.lattice());
    accumulate_realization(spec, env);
    finalize(spec);
    return spec;
}

CovarianceSpectrum covariance_spectrum(const std::vector<DriftField>& envs) {
    if (envs.empty()) throw std::invalid_argument("covariance_spectrum: no environments");
    CovarianceSpectrum spec(envs.front().lattice());
    // Realizations accumulate in index order: the reduction is deterministic
    // no matter how the environments were produced.
    for (const auto& env : envs) accumulate_realization(spec, env);
    finalize(spec);
    return spec;
}

HminusResult hminus_functional(const CovarianceSpectrum& spec) {
    const Lattice& lat = spec.lat;
    const int d = lat.dim();
    HminusResult res;
    res.ctilde.assign(static_cast<std::size_t>(d),
                      std::vector<double>(static_cast<std::size_t>(d), 0.0));

    double czero = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            czero = std::max(czero, std::abs(spec.component(i, j)[0]));
    res.chat_zero_norm = czero;
    res.net_drift_warning = czero > 1e-10 * static_cast<double>(lat.nsites());

    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            cplx acc{0.0, 0.0};
            const auto& comp = spec.component(i, j);
            for (std::int64_t p = 1; p < lat.nsites(); ++p)
                acc += comp[static_cast<std::size_t>(p)] / dhat(lat, p);
            res.ctilde[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                2.0 * acc.real() / static_cast<double>(lat.nsites());
        }
    }
    // symmetrize
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double s = 0.5 * (res.ctilde[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                    res.ctilde[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            res.ctilde[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
            res.ctilde[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = s;
        }
    for (int i = 0; i < d; ++i)
        res.trace += res.ctilde[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    const auto eig = sym_eigenvalues(res.ctilde);
    res.min_eigenvalue = eig.front();
    return res;
}

std::vector<double> hminus_norms(const DriftField& v) {
    const Lattice& lat = v.lattice();
    const auto spectra = direction_spectra(v);
    const double norm = 1.0 / (static_cast<double>(lat.nsites()) * static_cast<double>(lat.nsites()));
    std::vector<double> out(static_cast<std::size_t>(lat.ndirections()), 0.0);
    for (int idx = 0; idx < lat.ndirections(); ++idx) {
        double acc = 0.0;
        const auto& vh = spectra[static_cast<std::size_t>(idx)];
        for (std::int64_t p = 1; p < lat.nsites(); ++p)
            acc += std::norm(vh[static_cast<std::size_t>(p)]) / (2.0 * dhat(lat, p));
        out[static_cast<std::size_t>(idx)] = acc * norm;
    }
    return out;
}

IdentityReport check_spectral_identities(const Lattice& lat,
                                         const std::vector<std::vector<double>>& dirs) {
    const int d = lat.dim();
    const int nd = lat.ndirections();
    const auto n = static_cast<std::size_t>(lat.nsites());
    if (static_cast<int>(dirs.size()) != nd)
        throw std::invalid_argument("check_spectral_identities: need 2d direction fields");

    std::vector<std::vector<cplx>> vhat(static_cast<std::size_t>(nd));
    std::vector<cplx> buf(n);
    for (int idx = 0; idx < nd; ++idx) {
        for (std::size_t x = 0; x < n; ++x) buf[x] = cplx{dirs[static_cast<std::size_t>(idx)][x], 0.0};
        vhat[static_cast<std::size_t>(idx)].resize(n);
        dft_raw(lat, buf.data(), vhat[static_cast<std::size_t>(idx)].data());
    }

    const double invn = 1.0 / static_cast<double>(lat.nsites());
    IdentityReport rep;
    auto track = [&rep](double& slot, double r, std::int64_t p) {
        if (r > slot) {
            slot = r;
            rep.worst_freq = p;
        }
    };

    for (std::int64_t p = 0; p < lat.nsites(); ++p) {
        auto B = [&](int ki, int li) -> cplx {
            return std::conj(vhat[static_cast<std::size_t>(ki)][static_cast<std::size_t>(p)]) *
                   vhat[static_cast<std::size_t>(li)][static_cast<std::size_t>(p)] * invn;
        };
        auto phase = [&](Direction k) -> cplx {  // e^{i p.k}
            const double ph = k.sign * freq_component(lat, p, k.axis);
            return cplx{std::cos(ph), std::sin(ph)};
        };

        // shift identity in both indices
        for (int ki = 0; ki < nd; ++ki) {
            const Direction k = Direction::from_index(ki);
            for (int li = 0; li < nd; ++li) {
                const Direction l = Direction::from_index(li);
                const cplx r1 = B(ki, li) + phase(k) * B(k.reversed().index(), li);
                track(rep.shift_residual, std::abs(r1), p);
                const cplx r2 = B(ki, li) + std::conj(phase(l)) * B(ki, l.reversed().index());
                track(rep.shift_residual, std::abs(r2), p);
            }
        }
        // divergence identity, rows and columns
        for (int li = 0; li < nd; ++li) {
            cplx rows{0, 0}, cols{0, 0};
            for (int ki = 0; ki < nd; ++ki) {
                rows += B(ki, li);
                cols += B(li, ki);
            }
            track(rep.divfree_residual, std::abs(rows), p);
            track(rep.divfree_residual, std::abs(cols), p);
        }
        // factorized identity
        cplx fact{0, 0};
        for (int ki = 0; ki < nd; ++ki) {
            const Direction k = Direction::from_index(ki);
            for (int li = 0; li < nd; ++li) {
                const Direction l = Direction::from_index(li);
                fact += (1.0 - std::conj(phase(k))) * (1.0 - phase(l)) * B(ki, li);
            }
        }
        track(rep.factorized_residual, std::abs(fact), p);
    }

    // zero-mode identity: sum_{k,l} k_i l_j Bhat_{k,l}(0) = 0
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            cplx acc{0, 0};
            for (int ki = 0; ki < nd; ++ki) {
                const Direction k = Direction::from_index(ki);
                if (k.axis != i) continue;
                for (int li = 0; li < nd; ++li) {
                    const Direction l = Direction::from_index(li);
                    if (l.axis != j) continue;
                    const cplx b = std::conj(vhat[static_cast<std::size_t>(ki)][0]) *
                                   vhat[static_cast<std::size_t>(li)][0] * invn;
                    acc += static_cast<double>(k.sign * l.sign) * b;
                }
            }
            rep.czero_residual = std::max(rep.czero_residual, std::abs(acc));
        }
    }
    return rep;
}

IdentityReport check_spectral_identities(const DriftField& v) {
    const Lattice& lat = v.lattice();
    std::vector<std::vector<double>> dirs(static_cast<std::size_t>(lat.ndirections()),
                                          std::vector<double>(static_cast<std::size_t>(lat.nsites())));
    for (int idx = 0; idx < lat.ndirections(); ++idx) {
        const Direction k = Direction::from_index(idx);
        for (std::int64_t x = 0; x < lat.nsites(); ++x)
            dirs[static_cast<std::size_t>(idx)][static_cast<std::size_t>(x)] = v.value(x, k);
    }
    return check_spectral_identities(lat, dirs);
}

std::vector<double> sym_eigenvalues(const std::vector<std::vector<double>>& m) {
    const auto d = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> out(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
}

}  // namespace dwalk
