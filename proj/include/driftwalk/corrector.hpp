#pragma once

#include <Eigen/Sparse>

#include "driftwalk/fields.hpp"

namespace dwalk {

/// Generator of the environment-as-seen-from-the-walker chain on the torus:
/// G[x, x+k] = 1 + V_k(x), G[x,x] = -2d. Row sums and column sums are both
/// exactly zero (doubly stochastic), so the uniform measure is stationary.
struct EnvGenerator {
    Lattice lat;
    Eigen::SparseMatrix<double> G;
};

EnvGenerator build_generator(const DriftField& env);

struct ReducibleError : std::runtime_error {
    ReducibleError(std::string msg, std::vector<int> component_labels)
        : std::runtime_error(std::move(msg)), components(std::move(component_labels)) {}
    std::vector<int> components;  // per-site label of the positive-rate component
};

struct SolverDivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strong connectivity of the positive-rate graph. For any admissible drift
/// field this always holds (forward+reverse rates on an edge sum to 2, and
/// flow balance forbids one-way cuts); the check guards raw matrices.
bool is_irreducible(const Eigen::SparseMatrix<double>& G);
std::vector<int> positive_rate_components(const Eigen::SparseMatrix<double>& G);

/// u_lambda = (lambda I - G)^{-1} f on the mean-zero subspace, via a sparse
/// bordered solve (one extra row/column pinning the mean) so the system
/// stays well conditioned as lambda -> 0. Relative residual <= 1e-10 or
/// SolverDivergence.
ScalarLatticeField resolvent(const EnvGenerator& gen, double lambda,
                             const ScalarLatticeField& f);

struct CorrectorSolution {
    std::vector<ScalarLatticeField> chi;       // d mean-zero fields, G chi_i = -phi_i
    double residual = 0.0;                     // max |(G chi_i + phi_i)(x)|
    std::vector<std::vector<double>> sigma2;   // d x d quadratic-variation rate
};

/// Exact corrector and effective diffusivity on the periodic environment:
///   sigma2_{ij} = L^{-d} sum_x sum_k (1+V_k(x)) (k_i + grad_k chi_i)(k_j + grad_k chi_j).
/// Throws Reducible when the chain is disconnected (unreachable for valid
/// fields, see is_irreducible).
CorrectorSolution solve_corrector(const DriftField& env);

/// Kipnis-Varadhan resolvent diagnostics along a lambda grid, one row per
/// (lambda, component): lambda*||u||^2, ||S^{1/2}u||^2 = <u, |Lap| u>, and
/// 2<u, phi_i> (which converges to sigma2_{ii} - 2 as lambda -> 0).
struct KvRow {
    double lambda = 0.0;
    int component = 0;
    double lambda_u_norm2 = 0.0;
    double s_half_u_norm2 = 0.0;
    double two_u_dot_phi = 0.0;
};
std::vector<KvRow> kv_diagnostics(const DriftField& env, const std::vector<double>& lambdas);

}  // namespace dwalk
