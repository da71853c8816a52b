#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "driftwalk/mathutil.hpp"
#include "driftwalk/walker.hpp"

namespace dwalk {

struct InsufficientSamplesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HorizonTooLongError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Endpoint table: what simulate writes to CSV and the estimators consume.
struct Endpoints {
    int d = 0;
    double T = 0.0;
    std::vector<std::vector<std::int64_t>> x;  // displacement per sample
    std::vector<std::int64_t> jumps;
    std::vector<std::vector<double>> y, z;  // present with decomposition records

    static Endpoints from_trajectories(const std::vector<Trajectory>& trajs, int d, double T);
};

struct MsdPoint {
    double T = 0.0;
    double msd_over_t = 0.0;
    double se = 0.0;
    std::int64_t n = 0;
    bool violates_lower = false;  // < 2d - 4 SE
    bool violates_upper = false;  // > 2d + 8 trace(Ctilde) + 4 SE
};

/// One MSD point per endpoint table; needs >= 1000 samples each. The bound
/// flags use the trace bounds 2d <= E|X|^2/T <= 2d + 8 sum_i Ctilde_ii when
/// a Ctilde trace is supplied.
std::vector<MsdPoint> msd(const std::vector<Endpoints>& tables,
                          std::optional<double> ctilde_trace);

struct CltComponent {
    int component = 0;
    double ks_statistic = 0.0;
    double p_value = 0.0;
};

struct Sigma2Estimate {
    std::vector<std::vector<double>> sigma2;  // empirical covariance of X(T)/sqrt(T)
    std::vector<std::vector<double>> se;      // entrywise standard errors
    std::vector<CltComponent> clt;            // per-component KS vs N(0,1)
    std::int64_t n = 0;
};

Sigma2Estimate estimate_sigma2(const Endpoints& ep);

/// Environment-averaged CLT surrogate: for each frequency xi, the mean over
/// environments of |per-environment average of cos(xi X_i/sqrt(T sigma_ii))
/// - e^{-xi^2/2}|.
struct QuannealedReport {
    std::vector<double> xis;
    std::vector<double> mean_abs_deviation;  // averaged over envs and components
    int n_envs = 0;
};
QuannealedReport quannealed_deviation(const std::vector<Endpoints>& per_env,
                                      const std::vector<double>& xis);

struct HeatKernelRow {
    std::int64_t n = 0;
    double sup = 0.0;
    double sup_scaled = 0.0;  // sup * n^{d/2}
};

struct HeatKernelReport {
    std::vector<HeatKernelRow> rows;
    double conservation_worst = 0.0;  // max_n |sum_x P_n(x) - 1|
    double fitted_exponent = 0.0;     // slope of log sup vs log n, upper half
    double exponent_ci = 0.0;         // ~2 sigma half-width
    double stability_ratio = 1.0;     // max/min of sup_scaled over the range
};

/// Exact lazy-walk distribution from a point mass: P_{n+1} = P_n/2 +
/// sum_k shift_k(W_k P_n), W_k = (1+V_k)/(4d). No sampling involved.
/// Requires n_max <= (L/4)^2 (wrap-around guard).
HeatKernelReport heat_kernel(const DriftField& env, std::int64_t n_max,
                             std::int64_t fit_from = 0);

struct IsoperimetryResult {
    double q = 0.0;                  // lazy-walk flow out of S
    std::int64_t boundary_edges = 0; // directed boundary edge count
    bool exact = false;              // q == boundary/(4d) bitwise
};

/// Q(S, S^c) = sum_{x in S, y not in S} p(x,y) for the lazy chain. The drift
/// contributions cancel exactly over the cut, so Q = |dS|/(4d); the sum is
/// accumulated as a dyadic numerator and divided once to keep that identity
/// exact in floating point.
IsoperimetryResult isoperimetry(const DriftField& env, const std::vector<std::uint8_t>& in_set);

struct RwrsConsistency {
    std::vector<double> horizons;
    std::vector<MeanSe> estimates;
    double ctilde_trace = 0.0;
    bool final_within_4se = false;
    bool monotone_trend = false;
};

/// Two independent routes to the same number: the Monte-Carlo random-walk-
/// in-random-scenery functional versus the spectral mode sum trace(Ctilde).
RwrsConsistency rwrs_consistency(const DriftField& env, const std::vector<double>& horizons,
                                 std::int64_t samples, std::uint64_t seed);

}  // namespace dwalk
