#pragma once

#include <cstdint>
#include <vector>

#include "driftwalk/fields.hpp"
#include "driftwalk/generators.hpp"

namespace dwalk {

enum class RecordMode { endpoint, decomposition, full_path };
enum class StartMode { random_site, origin };

struct WalkConfig {
    double T = 0.0;           // continuous-time horizon
    std::int64_t steps = 0;   // discrete (lazy) horizon
    std::int64_t samples = 1;
    std::uint64_t master_seed = 0;
    RecordMode record = RecordMode::endpoint;
    StartMode start = StartMode::random_site;
    int workers = 0;  // 0: DRIFTWALK_WORKERS or hardware default
};

struct PathEvent {
    double time;
    Direction dir;
};

/// One walk realization. `displacement` lives in Z^d (never wrapped); the
/// environment is consulted modulo L. With record >= decomposition, y and z
/// hold the martingale part Y(T) = X(T) - Z(T) and the drift integral
/// Z(T) = int_0^T phi(eta_s) ds, the latter accumulated exactly over the
/// piecewise-constant holding intervals.
struct Trajectory {
    std::int64_t start_site = 0;
    std::vector<std::int64_t> displacement;
    std::int64_t jump_count = 0;
    std::vector<double> y, z;
    std::vector<PathEvent> events;
};

/// Per-site jump rates 1 + V_k(x) (direction-major within site) and the
/// local drift phi. Construction asserts exact rate conservation
/// sum_k (1 + V_k(x)) = 2d at every site.
struct RateTable {
    explicit RateTable(const DriftField& env);
    Lattice lat;
    std::vector<double> rates;  // nsites * 2d
    std::vector<double> phi;    // nsites * d

    [[nodiscard]] const double* site_rates(std::int64_t s) const noexcept {
        return &rates[static_cast<std::size_t>(s * lat.ndirections())];
    }
    [[nodiscard]] const double* site_phi(std::int64_t s) const noexcept {
        return &phi[static_cast<std::size_t>(s * lat.dim())];
    }
};

/// Continuous-time walk with jump rate 1 + V_k(x) along k (total rate 2d).
/// Trajectory i draws from the stream derive_seed(master_seed, i), so
/// results are bit-identical for any worker count.
std::vector<Trajectory> simulate_ctmc(const DriftField& env, const WalkConfig& cfg);

/// Lazy discrete-time walk: stay w.p. 1/2, step k w.p. (1 + V_k(x))/(4d).
std::vector<Trajectory> simulate_lazy(const DriftField& env, const WalkConfig& cfg);

/// Annealed mode: a fresh environment per trajectory (spec.seed is re-derived
/// per trajectory index).
std::vector<Trajectory> simulate_ctmc_annealed(const GeneratorSpec& spec,
                                               const WalkConfig& cfg);

/// R environments x cfg.samples walks each.
std::vector<std::vector<Trajectory>> simulate_ctmc_per_env(const GeneratorSpec& spec,
                                                           int n_envs,
                                                           const WalkConfig& cfg);

/// H_-1 functional, first formulation: T^{-1} E|int_0^T Phi(S(t)) dt|^2 for
/// a simple symmetric walk S independent of the drift. S jumps along each of
/// the 2d directions at rate 1/2, which makes its transition semigroup
/// e^{-t Dhat(p)} — exactly the weight against which the mode sum Ctilde is
/// defined, so this estimator converges to trace(Ctilde).
struct RwrsEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::vector<double> per_sample;
};
RwrsEstimate simulate_rwrs(const DriftField& env, double T, std::int64_t samples,
                           std::uint64_t seed, int workers = 0);

struct RecordModeMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Y and Z sampled at every event time (plus the endpoint) of a full path.
struct DecomposedPath {
    std::vector<double> times;
    std::vector<std::vector<double>> y;  // one d-vector per time
    std::vector<std::vector<double>> z;
};
DecomposedPath decompose(const Trajectory& traj, const DriftField& env, double T);

/// Resolves cfg.workers: flag > DRIFTWALK_WORKERS > hardware_concurrency.
int resolve_workers(int requested);

}  // namespace dwalk
