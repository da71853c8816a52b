#include "driftwalk/walker.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "driftwalk/rng.hpp"
#include "driftwalk/simd/kernels.hpp"

namespace dwalk {

namespace {

/// Static chunking over [0, n); chunk boundaries depend only on (n, workers),
/// and every item writes to its own slot, so the schedule cannot affect
/// results.
template <typename Fn>
void parallel_chunks(std::int64_t n, int workers, Fn&& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || n < 2 * workers) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

struct StepChoice {
    int dir_index;
};

// Direction with cumulative rate exceeding u; u must lie in [0, total).
inline int pick_direction(const double* rates, int ndir, double u) {
    double acc = 0.0;
    for (int idx = 0; idx < ndir; ++idx) {
        acc += rates[idx];
        if (u < acc) return idx;
    }
    // Roundoff pushed u past the final cumulative value: take the last
    // direction that can actually fire.
    for (int idx = ndir - 1; idx >= 0; --idx)
        if (rates[idx] > 0.0) return idx;
    return ndir - 1;
}

}  // namespace

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DRIFTWALK_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

RateTable::RateTable(const DriftField& env) : lat(env.lattice()) {
    const int nd = lat.ndirections();
    const int d = lat.dim();
    rates.resize(static_cast<std::size_t>(lat.nsites() * nd));
    phi = drift_vector_table(env);
    for (std::int64_t x = 0; x < lat.nsites(); ++x) {
        double total = 0.0;
        for (int idx = 0; idx < nd; ++idx) {
            const double r = 1.0 + env.value(x, Direction::from_index(idx));
            if (r < -1e-12)
                throw std::invalid_argument("rate table: negative rate at site " +
                                            std::to_string(x));
            rates[static_cast<std::size_t>(x * nd + idx)] = r < 0.0 ? 0.0 : r;
            total += r;
        }
        if (std::abs(total - 2.0 * d) > 1e-9)
            throw std::invalid_argument("rate table: total rate " + std::to_string(total) +
                                        " != 2d at site " + std::to_string(x));
    }
}

std::vector<Trajectory> simulate_ctmc(const DriftField& env, const WalkConfig& cfg) {
    const RateTable table(env);
    const Lattice& lat = table.lat;
    const int d = lat.dim();
    const int nd = lat.ndirections();
    const double total_rate = 2.0 * d;

    std::vector<Trajectory> out(static_cast<std::size_t>(cfg.samples));
    parallel_chunks(cfg.samples, resolve_workers(cfg.workers), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i)));
            Trajectory& traj = out[static_cast<std::size_t>(i)];
            traj.displacement.assign(static_cast<std::size_t>(d), 0);
            traj.z.assign(static_cast<std::size_t>(d), 0.0);

            std::int64_t site = (cfg.start == StartMode::random_site)
                                    ? static_cast<std::int64_t>(
                                          rng.below(static_cast<std::uint64_t>(lat.nsites())))
                                    : 0;
            traj.start_site = site;

            double t = 0.0;
            for (;;) {
                const double tau = rng.exponential(total_rate);
                const double* phi = table.site_phi(site);
                if (t + tau >= cfg.T) {
                    const double rest = cfg.T - t;
                    for (int c = 0; c < d; ++c) traj.z[static_cast<std::size_t>(c)] += phi[c] * rest;
                    break;
                }
                for (int c = 0; c < d; ++c) traj.z[static_cast<std::size_t>(c)] += phi[c] * tau;
                t += tau;
                const int idx =
                    pick_direction(table.site_rates(site), nd, rng.uniform() * total_rate);
                const Direction k = Direction::from_index(idx);
                traj.displacement[static_cast<std::size_t>(k.axis)] += k.sign;
                site = lat.neighbour(site, k);
                ++traj.jump_count;
                if (cfg.record == RecordMode::full_path) traj.events.push_back({t, k});
            }

            if (cfg.record == RecordMode::endpoint) {
                traj.z.clear();
            } else {
                traj.y.resize(static_cast<std::size_t>(d));
                for (int c = 0; c < d; ++c)
                    traj.y[static_cast<std::size_t>(c)] =
                        static_cast<double>(traj.displacement[static_cast<std::size_t>(c)]) -
                        traj.z[static_cast<std::size_t>(c)];
            }
        }
    });
    return out;
}

std::vector<Trajectory> simulate_lazy(const DriftField& env, const WalkConfig& cfg) {
    const RateTable table(env);
    const Lattice& lat = table.lat;
    const int d = lat.dim();
    const int nd = lat.ndirections();
    const double move_scale = 1.0 / (4.0 * d);

    std::vector<Trajectory> out(static_cast<std::size_t>(cfg.samples));
    parallel_chunks(cfg.samples, resolve_workers(cfg.workers), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i)));
            Trajectory& traj = out[static_cast<std::size_t>(i)];
            traj.displacement.assign(static_cast<std::size_t>(d), 0);

            std::int64_t site = (cfg.start == StartMode::random_site)
                                    ? static_cast<std::int64_t>(
                                          rng.below(static_cast<std::uint64_t>(lat.nsites())))
                                    : 0;
            traj.start_site = site;

            for (std::int64_t n = 0; n < cfg.steps; ++n) {
                const double u = rng.uniform();
                if (u < 0.5) continue;  // lazy half
                const double* rates = table.site_rates(site);
                double w = u - 0.5;
                int chosen = -1;
                double acc = 0.0;
                for (int idx = 0; idx < nd; ++idx) {
                    acc += rates[idx] * move_scale;
                    if (w < acc) {
                        chosen = idx;
                        break;
                    }
                }
                if (chosen < 0) continue;  // roundoff at the very top: treat as stay
                const Direction k = Direction::from_index(chosen);
                traj.displacement[static_cast<std::size_t>(k.axis)] += k.sign;
                site = lat.neighbour(site, k);
                ++traj.jump_count;
                if (cfg.record == RecordMode::full_path)
                    traj.events.push_back({static_cast<double>(n + 1), k});
            }
        }
    });
    return out;
}

std::vector<Trajectory> simulate_ctmc_annealed(const GeneratorSpec& spec,
                                               const WalkConfig& cfg) {
    std::vector<Trajectory> out(static_cast<std::size_t>(cfg.samples));
    parallel_chunks(cfg.samples, resolve_workers(cfg.workers), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            GeneratorSpec gs = spec;
            gs.seed = derive_seed(spec.seed, 0xE0000000ULL + static_cast<std::uint64_t>(i));
            auto [h, env] = generate(gs);
            WalkConfig one = cfg;
            one.samples = 1;
            one.workers = 1;
            one.master_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i));
            out[static_cast<std::size_t>(i)] = simulate_ctmc(env, one)[0];
        }
    });
    return out;
}

std::vector<std::vector<Trajectory>> simulate_ctmc_per_env(const GeneratorSpec& spec,
                                                           int n_envs,
                                                           const WalkConfig& cfg) {
    std::vector<std::vector<Trajectory>> out(static_cast<std::size_t>(n_envs));
    for (int e = 0; e < n_envs; ++e) {
        GeneratorSpec gs = spec;
        gs.seed = derive_seed(spec.seed, 0xC0000000ULL + static_cast<std::uint64_t>(e));
        auto [h, env] = generate(gs);
        WalkConfig one = cfg;
        one.master_seed = derive_seed(cfg.master_seed, 0xC0000000ULL + static_cast<std::uint64_t>(e));
        out[static_cast<std::size_t>(e)] = simulate_ctmc(env, one);
    }
    return out;
}

RwrsEstimate simulate_rwrs(const DriftField& env, double T, std::int64_t samples,
                           std::uint64_t seed, int workers) {
    const Lattice& lat = env.lattice();
    const int d = lat.dim();
    const int nd = lat.ndirections();
    const std::vector<double> phi = drift_vector_table(env);
    const double total_rate = static_cast<double>(d);  // rate 1/2 per direction

    RwrsEstimate est;
    est.per_sample.assign(static_cast<std::size_t>(samples), 0.0);
    parallel_chunks(samples, resolve_workers(workers), [&](std::int64_t lo, std::int64_t hi) {
        std::vector<double> z(static_cast<std::size_t>(d));
        for (std::int64_t i = lo; i < hi; ++i) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
            std::int64_t site =
                static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(lat.nsites())));
            std::fill(z.begin(), z.end(), 0.0);
            double t = 0.0;
            for (;;) {
                const double tau = rng.exponential(total_rate);
                const double* ph = &phi[static_cast<std::size_t>(site * d)];
                const double dt = (t + tau >= T) ? (T - t) : tau;
                for (int c = 0; c < d; ++c) z[static_cast<std::size_t>(c)] += ph[c] * dt;
                if (t + tau >= T) break;
                t += tau;
                const int idx = static_cast<int>(rng.below(static_cast<std::uint64_t>(nd)));
                site = lat.neighbour(site, Direction::from_index(idx));
            }
            double nrm2 = 0.0;
            for (int c = 0; c < d; ++c)
                nrm2 += z[static_cast<std::size_t>(c)] * z[static_cast<std::size_t>(c)];
            est.per_sample[static_cast<std::size_t>(i)] = nrm2 / T;
        }
    });

    const auto& k = simd::kernels();
    const auto n = est.per_sample.size();
    est.mean = k.sum(est.per_sample.data(), n) / static_cast<double>(n);
    double varsum = 0.0;
    for (double v : est.per_sample) varsum += (v - est.mean) * (v - est.mean);
    est.se = std::sqrt(varsum / (static_cast<double>(n) * (static_cast<double>(n) - 1.0)));
    return est;
}

DecomposedPath decompose(const Trajectory& traj, const DriftField& env, double T) {
    if (traj.events.empty() && traj.jump_count > 0)
        throw RecordModeMismatchError("decompose: trajectory was not recorded with full_path");
    const Lattice& lat = env.lattice();
    const int d = lat.dim();
    const std::vector<double> phi = drift_vector_table(env);

    DecomposedPath out;
    std::vector<double> z(static_cast<std::size_t>(d), 0.0);
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    std::int64_t site = traj.start_site;
    double t = 0.0;
    auto push = [&](double when) {
        out.times.push_back(when);
        out.z.push_back(z);
        std::vector<double> y(static_cast<std::size_t>(d));
        for (int c = 0; c < d; ++c)
            y[static_cast<std::size_t>(c)] = x[static_cast<std::size_t>(c)] - z[static_cast<std::size_t>(c)];
        out.y.push_back(std::move(y));
    };
    for (const auto& ev : traj.events) {
        const double* ph = &phi[static_cast<std::size_t>(site * d)];
        for (int c = 0; c < d; ++c) z[static_cast<std::size_t>(c)] += ph[c] * (ev.time - t);
        t = ev.time;
        x[static_cast<std::size_t>(ev.dir.axis)] += ev.dir.sign;
        site = lat.neighbour(site, ev.dir);
        push(t);
    }
    const double* ph = &phi[static_cast<std::size_t>(site * d)];
    for (int c = 0; c < d; ++c) z[static_cast<std::size_t>(c)] += ph[c] * (T - t);
    push(T);

    // X reconstructed from events must match the recorded endpoint.
    for (int c = 0; c < d; ++c) {
        if (std::llround(x[static_cast<std::size_t>(c)]) !=
            traj.displacement[static_cast<std::size_t>(c)])
            throw std::logic_error("decompose: event list inconsistent with endpoint");
    }
    return out;
}

}  // namespace dwalk
