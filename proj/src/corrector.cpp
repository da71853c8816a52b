#include "driftwalk/corrector.hpp"

#include <cmath>
#include <functional>
#include <queue>

#include <Eigen/SparseLU>
#include <Eigen/IterativeLinearSolvers>

namespace dwalk {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// [K  1; 1^T 0] with K = lambda I - G. For mean-zero right-hand sides the
// border multiplier comes out zero and u is the mean-zero solution.
SpMat bordered(const SpMat& G, double lambda) {
    const auto n = G.rows();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(G.nonZeros() + 3 * n + 1));
    for (int col = 0; col < G.outerSize(); ++col)
        for (SpMat::InnerIterator it(G, col); it; ++it)
            trips.emplace_back(static_cast<int>(it.row()), col, -it.value());
    for (int i = 0; i < n; ++i) {
        if (lambda != 0.0) trips.emplace_back(i, i, lambda);
        trips.emplace_back(i, static_cast<int>(n), 1.0);
        trips.emplace_back(static_cast<int>(n), i, 1.0);
    }
    SpMat a(n + 1, n + 1);
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

Eigen::VectorXd solve_bordered(const SpMat& A, const Eigen::VectorXd& rhs) {
    if (A.rows() <= 8192) {
        Eigen::SparseLU<SpMat> lu;
        lu.analyzePattern(A);
        lu.factorize(A);
        if (lu.info() != Eigen::Success)
            throw SolverDivergenceError("sparse LU factorization failed");
        return lu.solve(rhs);
    }
    Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<double>> it;
    it.setTolerance(1e-13);
    it.setMaxIterations(20000);
    it.compute(A);
    Eigen::VectorXd x = it.solve(rhs);
    if (it.info() != Eigen::Success)
        throw SolverDivergenceError("BiCGSTAB did not converge (error " +
                                    std::to_string(it.error()) + ")");
    return x;
}

Eigen::VectorXd solve_mean_zero(const SpMat& G, double lambda, const Eigen::VectorXd& f) {
    const auto n = G.rows();
    const SpMat A = bordered(G, lambda);
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = f;
    rhs(n) = 0.0;
    Eigen::VectorXd xu = solve_bordered(A, rhs);
    Eigen::VectorXd u = xu.head(n);

    const double fn = f.norm();
    const double rn = (lambda * u - G * u - f).norm();
    if (fn > 0 && rn > 1e-10 * fn)
        throw SolverDivergenceError("resolvent residual " + std::to_string(rn / fn) +
                                    " above 1e-10");
    return u;
}

double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.dot(b) / static_cast<double>(a.size());
}

}  // namespace

EnvGenerator build_generator(const DriftField& env) {
    const Lattice& lat = env.lattice();
    const int nd = lat.ndirections();
    const auto n = static_cast<int>(lat.nsites());
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(nd + 1));
    for (std::int64_t x = 0; x < n; ++x) {
        trips.emplace_back(static_cast<int>(x), static_cast<int>(x), -2.0 * lat.dim());
        for (int idx = 0; idx < nd; ++idx) {
            const Direction k = Direction::from_index(idx);
            const double r = 1.0 + env.value(x, k);
            if (r != 0.0)
                trips.emplace_back(static_cast<int>(x),
                                   static_cast<int>(lat.neighbour(x, k)), r);
        }
    }
    SpMat G(n, n);
    G.setFromTriplets(trips.begin(), trips.end());
    return {lat, std::move(G)};
}

std::vector<int> positive_rate_components(const SpMat& G) {
    const auto n = static_cast<std::size_t>(G.rows());
    // Union on undirected support of positive off-diagonal entries.
    std::vector<int> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    for (int col = 0; col < G.outerSize(); ++col)
        for (SpMat::InnerIterator it(G, col); it; ++it)
            if (it.row() != col && it.value() > 0.0) {
                const int ra = find(static_cast<int>(it.row()));
                const int rb = find(col);
                if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
            }
    std::vector<int> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = find(static_cast<int>(i));
    return label;
}

bool is_irreducible(const SpMat& G) {
    const auto n = static_cast<std::size_t>(G.rows());
    if (n == 0) return false;
    // forward and backward reachability from node 0 over positive rates
    auto bfs = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        std::size_t count = 1;
        // column-major storage: iterate columns; forward edges row->col need
        // the transpose view, so walk both orientations explicitly.
        SpMat M = forward ? SpMat(G.transpose()) : G;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (SpMat::InnerIterator it(M, v); it; ++it) {
                const auto r = static_cast<std::size_t>(it.row());
                if (static_cast<int>(r) != v && it.value() > 0.0 && !seen[r]) {
                    seen[r] = 1;
                    ++count;
                    q.push(static_cast<int>(it.row()));
                }
            }
        }
        return count == n;
    };
    return bfs(true) && bfs(false);
}

ScalarLatticeField resolvent(const EnvGenerator& gen, double lambda,
                             const ScalarLatticeField& f) {
    if (lambda <= 0.0) throw std::invalid_argument("resolvent: lambda must be positive");
    const auto n = gen.lat.nsites();
    Eigen::VectorXd fv(n);
    for (std::int64_t i = 0; i < n; ++i) fv(i) = f.values[static_cast<std::size_t>(i)];
    Eigen::VectorXd u = solve_mean_zero(gen.G, lambda, fv);
    ScalarLatticeField out(gen.lat);
    for (std::int64_t i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = u(i);
    out.mean_zero = true;
    return out;
}

CorrectorSolution solve_corrector(const DriftField& env) {
    EnvGenerator gen = build_generator(env);
    if (!is_irreducible(gen.G)) {
        auto labels = positive_rate_components(gen.G);
        throw ReducibleError("solve_corrector: environment chain is reducible", labels);
    }
    const Lattice& lat = gen.lat;
    const int d = lat.dim();
    const auto n = lat.nsites();
    const std::vector<double> phi = drift_vector_table(env);

    CorrectorSolution sol;
    sol.sigma2.assign(static_cast<std::size_t>(d),
                      std::vector<double>(static_cast<std::size_t>(d), 0.0));

    std::vector<Eigen::VectorXd> chi(static_cast<std::size_t>(d));
    double maxphi = 0.0;
    for (int i = 0; i < d; ++i) {
        Eigen::VectorXd rhs(n);
        for (std::int64_t x = 0; x < n; ++x) {
            rhs(x) = -phi[static_cast<std::size_t>(x * d + i)];
            maxphi = std::max(maxphi, std::abs(rhs(x)));
        }
        // G chi = -phi  <=>  (0*I - G) chi = phi... solve (-G) chi = phi.
        chi[static_cast<std::size_t>(i)] = solve_mean_zero(gen.G, 0.0, -rhs);
        // residual of G chi + phi
        Eigen::VectorXd res = gen.G * chi[static_cast<std::size_t>(i)] - rhs;
        sol.residual = std::max(sol.residual, res.cwiseAbs().maxCoeff());

        ScalarLatticeField field(lat);
        for (std::int64_t x = 0; x < n; ++x)
            field.values[static_cast<std::size_t>(x)] = chi[static_cast<std::size_t>(i)](x);
        field.mean_zero = true;
        sol.chi.push_back(std::move(field));
    }
    if (maxphi > 0 && sol.residual > 1e-9 * maxphi)
        throw SolverDivergenceError("corrector residual above 1e-9 * max|phi|");

    // quadratic-variation rate of the harmonically corrected walk
    for (std::int64_t x = 0; x < n; ++x) {
        for (int idx = 0; idx < lat.ndirections(); ++idx) {
            const Direction k = Direction::from_index(idx);
            const double rate = 1.0 + env.value(x, k);
            if (rate == 0.0) continue;
            const std::int64_t xk = lat.neighbour(x, k);
            for (int i = 0; i < d; ++i) {
                const double gi = (k.axis == i ? k.sign : 0.0) +
                                  chi[static_cast<std::size_t>(i)](xk) -
                                  chi[static_cast<std::size_t>(i)](x);
                for (int j = i; j < d; ++j) {
                    const double gj = (k.axis == j ? k.sign : 0.0) +
                                      chi[static_cast<std::size_t>(j)](xk) -
                                      chi[static_cast<std::size_t>(j)](x);
                    sol.sigma2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        rate * gi * gj;
                }
            }
        }
    }
    const double invn = 1.0 / static_cast<double>(n);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            sol.sigma2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *= invn;
            sol.sigma2[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                sol.sigma2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    return sol;
}

std::vector<KvRow> kv_diagnostics(const DriftField& env, const std::vector<double>& lambdas) {
    EnvGenerator gen = build_generator(env);
    const Lattice& lat = gen.lat;
    const int d = lat.dim();
    const auto n = lat.nsites();
    const std::vector<double> phi = drift_vector_table(env);

    std::vector<KvRow> rows;
    rows.reserve(lambdas.size() * static_cast<std::size_t>(d));
    for (double lambda : lambdas) {
        if (lambda <= 0.0) throw std::invalid_argument("kv_diagnostics: lambda grid must be positive");
        for (int i = 0; i < d; ++i) {
            Eigen::VectorXd f(n);
            for (std::int64_t x = 0; x < n; ++x)
                f(x) = phi[static_cast<std::size_t>(x * d + i)];
            const Eigen::VectorXd u = solve_mean_zero(gen.G, lambda, f);

            KvRow row;
            row.lambda = lambda;
            row.component = i;
            row.lambda_u_norm2 = lambda * inner(u, u);
            // <u, |Lap| u> with |Lap|u(x) = 2d u(x) - sum_l u(x+l)
            double s_half = 0.0;
            for (std::int64_t x = 0; x < n; ++x) {
                double lap = 2.0 * d * u(x);
                for (int idx = 0; idx < lat.ndirections(); ++idx)
                    lap -= u(lat.neighbour(x, Direction::from_index(idx)));
                s_half += u(x) * lap;
            }
            row.s_half_u_norm2 = s_half / static_cast<double>(n);
            row.two_u_dot_phi = 2.0 * inner(u, f);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace dwalk
