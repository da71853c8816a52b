#include "driftwalk/stats.hpp"

#include <algorithm>
#include <cmath>

#include "driftwalk/covariance.hpp"
#include "driftwalk/rng.hpp"
#include "driftwalk/simd/kernels.hpp"

namespace dwalk {

Endpoints Endpoints::from_trajectories(const std::vector<Trajectory>& trajs, int d, double T) {
    Endpoints ep;
    ep.d = d;
    ep.T = T;
    ep.x.reserve(trajs.size());
    ep.jumps.reserve(trajs.size());
    for (const auto& t : trajs) {
        ep.x.push_back(t.displacement);
        ep.jumps.push_back(t.jump_count);
        if (!t.y.empty()) {
            ep.y.push_back(t.y);
            ep.z.push_back(t.z);
        }
    }
    return ep;
}

std::vector<MsdPoint> msd(const std::vector<Endpoints>& tables,
                          std::optional<double> ctilde_trace) {
    std::vector<MsdPoint> out;
    for (const auto& ep : tables) {
        if (ep.x.size() < 1000)
            throw InsufficientSamplesError("msd: need >= 1000 samples per horizon, got " +
                                           std::to_string(ep.x.size()));
        std::vector<double> sq(ep.x.size());
        for (std::size_t i = 0; i < ep.x.size(); ++i) {
            double s = 0;
            for (auto v : ep.x[i]) s += static_cast<double>(v) * static_cast<double>(v);
            sq[i] = s / ep.T;
        }
        const MeanSe ms = mean_se(sq);
        MsdPoint pt;
        pt.T = ep.T;
        pt.msd_over_t = ms.mean;
        pt.se = ms.se;
        pt.n = static_cast<std::int64_t>(ep.x.size());
        const double lower = 2.0 * ep.d;
        pt.violates_lower = ms.mean < lower - 4.0 * ms.se;
        if (ctilde_trace) {
            const double upper = 2.0 * ep.d + 8.0 * (*ctilde_trace);
            pt.violates_upper = ms.mean > upper + 4.0 * ms.se;
        }
        out.push_back(pt);
    }
    return out;
}

Sigma2Estimate estimate_sigma2(const Endpoints& ep) {
    const auto n = ep.x.size();
    if (n < 100) throw InsufficientSamplesError("estimate_sigma2: need >= 100 endpoints");
    const int d = ep.d;
    const double sqrtT = std::sqrt(ep.T);

    Sigma2Estimate est;
    est.n = static_cast<std::int64_t>(n);
    est.sigma2.assign(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    est.se = est.sigma2;

    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    for (const auto& xi : ep.x)
        for (int c = 0; c < d; ++c) mean[static_cast<std::size_t>(c)] += static_cast<double>(xi[static_cast<std::size_t>(c)]);
    for (auto& m : mean) m /= static_cast<double>(n) * sqrtT;

    for (const auto& xi : ep.x) {
        for (int a = 0; a < d; ++a) {
            const double va = static_cast<double>(xi[static_cast<std::size_t>(a)]) / sqrtT -
                              mean[static_cast<std::size_t>(a)];
            for (int b = a; b < d; ++b) {
                const double vb = static_cast<double>(xi[static_cast<std::size_t>(b)]) / sqrtT -
                                  mean[static_cast<std::size_t>(b)];
                est.sigma2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += va * vb;
            }
        }
    }
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            est.sigma2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] /=
                static_cast<double>(n) - 1.0;
            est.sigma2[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
                est.sigma2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const double saa = est.sigma2[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
            const double sbb = est.sigma2[static_cast<std::size_t>(b)][static_cast<std::size_t>(b)];
            const double sab = est.sigma2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            est.se[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                std::sqrt((saa * sbb + sab * sab) / static_cast<double>(n));
        }

    for (int c = 0; c < d; ++c) {
        const double sd =
            std::sqrt(est.sigma2[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)]);
        std::vector<double> scaled(n);
        for (std::size_t i = 0; i < n; ++i)
            scaled[i] = (static_cast<double>(ep.x[i][static_cast<std::size_t>(c)]) / sqrtT -
                         mean[static_cast<std::size_t>(c)]) /
                        sd;
        const KsResult ks = ks_test_standard_normal(std::move(scaled));
        est.clt.push_back({c, ks.statistic, ks.p_value});
    }
    return est;
}

QuannealedReport quannealed_deviation(const std::vector<Endpoints>& per_env,
                                      const std::vector<double>& xis) {
    if (per_env.empty()) throw InsufficientSamplesError("quannealed: no environments");
    const int d = per_env.front().d;

    // pooled per-component variance for the scaling
    std::vector<double> pooled(static_cast<std::size_t>(d), 0.0);
    std::size_t total = 0;
    for (const auto& ep : per_env) {
        for (const auto& xi : ep.x)
            for (int c = 0; c < d; ++c) {
                const double v = static_cast<double>(xi[static_cast<std::size_t>(c)]) / std::sqrt(ep.T);
                pooled[static_cast<std::size_t>(c)] += v * v;
            }
        total += ep.x.size();
    }
    for (auto& p : pooled) p /= static_cast<double>(total);

    QuannealedReport rep;
    rep.xis = xis;
    rep.n_envs = static_cast<int>(per_env.size());
    for (double xi : xis) {
        const double gaussian = std::exp(-xi * xi / 2.0);
        double dev_sum = 0.0;
        int dev_count = 0;
        for (const auto& ep : per_env) {
            for (int c = 0; c < d; ++c) {
                const double scale =
                    xi / std::sqrt(ep.T * pooled[static_cast<std::size_t>(c)]);
                double m = 0.0;
                for (const auto& x : ep.x)
                    m += std::cos(scale * static_cast<double>(x[static_cast<std::size_t>(c)]));
                m /= static_cast<double>(ep.x.size());
                dev_sum += std::abs(m - gaussian);
                ++dev_count;
            }
        }
        rep.mean_abs_deviation.push_back(dev_sum / dev_count);
    }
    return rep;
}

HeatKernelReport heat_kernel(const DriftField& env, std::int64_t n_max, std::int64_t fit_from) {
    const Lattice& lat = env.lattice();
    const int d = lat.dim();
    const auto L = static_cast<std::int64_t>(lat.side());
    if (n_max > (L / 4) * (L / 4))
        throw HorizonTooLongError("heat_kernel: n_max " + std::to_string(n_max) +
                                  " exceeds (L/4)^2 wrap-around guard");
    const auto n = static_cast<std::size_t>(lat.nsites());
    const auto& K = simd::kernels();

    // W_k = (1+V_k)/(4d), one array per direction
    std::vector<std::vector<double>> w(static_cast<std::size_t>(lat.ndirections()),
                                       std::vector<double>(n));
    for (int idx = 0; idx < lat.ndirections(); ++idx) {
        const Direction k = Direction::from_index(idx);
        for (std::int64_t x = 0; x < lat.nsites(); ++x)
            w[static_cast<std::size_t>(idx)][static_cast<std::size_t>(x)] =
                (1.0 + env.value(x, k)) / (4.0 * d);
    }

    std::vector<double> p(n, 0.0), next(n), tmp(n);
    p[0] = 1.0;  // point mass at the origin

    // out += tmp shifted one step along `axis` in direction `sign`
    auto add_shifted = [&](std::vector<double>& out, const std::vector<double>& src, int axis,
                           int sign) {
        const std::int64_t stride = lat.stride(axis);
        const std::int64_t block = stride * L;
        for (std::int64_t base = 0; base < lat.nsites(); base += block) {
            double* ob = out.data() + base;
            const double* sb = src.data() + base;
            const auto bulk = static_cast<std::size_t>((L - 1) * stride);
            const auto row = static_cast<std::size_t>(stride);
            if (sign > 0) {
                K.acc(ob + stride, sb, bulk);
                K.acc(ob, sb + (L - 1) * stride, row);
            } else {
                K.acc(ob, sb + stride, bulk);
                K.acc(ob + (L - 1) * stride, sb, row);
            }
        }
    };

    HeatKernelReport rep;
    auto record = [&](std::int64_t step) {
        double sup = 0.0;
        for (double v : p) sup = std::max(sup, v);
        const double total = K.sum(p.data(), n);
        rep.conservation_worst = std::max(rep.conservation_worst, std::abs(total - 1.0));
        rep.rows.push_back({step, sup, sup * std::pow(static_cast<double>(step), d / 2.0)});
    };

    record(0);
    for (std::int64_t step = 1; step <= n_max; ++step) {
        K.scale(next.data(), p.data(), 0.5, n);
        for (int idx = 0; idx < lat.ndirections(); ++idx) {
            const Direction k = Direction::from_index(idx);
            K.mul(tmp.data(), w[static_cast<std::size_t>(idx)].data(), p.data(), n);
            add_shifted(next, tmp, k.axis, k.sign);
        }
        p.swap(next);
        record(step);
    }

    if (fit_from <= 0) fit_from = n_max / 2;
    std::vector<double> lx, ly;
    double smin = 0, smax = 0;
    bool first = true;
    for (const auto& row : rep.rows) {
        if (row.n < fit_from) continue;
        lx.push_back(std::log(static_cast<double>(row.n)));
        ly.push_back(std::log(row.sup));
        if (first || row.sup_scaled < smin) smin = row.sup_scaled;
        if (first || row.sup_scaled > smax) smax = row.sup_scaled;
        first = false;
    }
    if (lx.size() >= 3) {
        const LinearFit fit = linear_fit(lx, ly);
        rep.fitted_exponent = -fit.slope;
        rep.exponent_ci = 2.0 * fit.slope_se;
    }
    rep.stability_ratio = (smin > 0) ? smax / smin : 0.0;
    return rep;
}

IsoperimetryResult isoperimetry(const DriftField& env, const std::vector<std::uint8_t>& in_set) {
    const Lattice& lat = env.lattice();
    if (in_set.size() != static_cast<std::size_t>(lat.nsites()))
        throw std::invalid_argument("isoperimetry: mask size mismatch");

    IsoperimetryResult res;
    double numerator = 0.0;  // sum over cut edges of (1 + V_k(x)); dyadic-exact
    for (std::int64_t x = 0; x < lat.nsites(); ++x) {
        if (!in_set[static_cast<std::size_t>(x)]) continue;
        for (int idx = 0; idx < lat.ndirections(); ++idx) {
            const Direction k = Direction::from_index(idx);
            const std::int64_t y = lat.neighbour(x, k);
            if (in_set[static_cast<std::size_t>(y)]) continue;
            numerator += 1.0 + env.value(x, k);
            ++res.boundary_edges;
        }
    }
    const double denom = 4.0 * lat.dim();
    res.q = numerator / denom;
    res.exact = (res.q == static_cast<double>(res.boundary_edges) / denom);
    return res;
}

RwrsConsistency rwrs_consistency(const DriftField& env, const std::vector<double>& horizons,
                                 std::int64_t samples, std::uint64_t seed) {
    RwrsConsistency out;
    out.horizons = horizons;
    const CovarianceSpectrum spec = covariance_spectrum(env);
    out.ctilde_trace = hminus_functional(spec).trace;

    for (std::size_t i = 0; i < horizons.size(); ++i) {
        const RwrsEstimate est =
            simulate_rwrs(env, horizons[i], samples, derive_seed(seed, i));
        out.estimates.push_back({est.mean, est.se, est.per_sample.size()});
    }
    const MeanSe last = out.estimates.back();
    out.final_within_4se = std::abs(last.mean - out.ctilde_trace) <= 4.0 * last.se;
    out.monotone_trend = true;
    for (std::size_t i = 1; i < out.estimates.size(); ++i) {
        if (out.estimates[i].mean < out.estimates[i - 1].mean - 2.0 * out.estimates[i - 1].se)
            out.monotone_trend = false;
    }
    return out;
}

}  // namespace dwalk
