#include "driftwalk/fields.hpp"

#include <cmath>

namespace dwalk {

DriftField curl(const StreamTensorField& h) {
    const Lattice& lat = h.lattice();
    const int d = lat.dim();
    DriftField v(lat);
    for (std::int64_t x = 0; x < lat.nsites(); ++x) {
        for (int i = 0; i < d; ++i) {
            // V_{e_i}(x) = sum_{j != i} [H_{e_i,e_j}(x) + H_{e_i,-e_j}(x)]
            //            = sum_{j != i} [Ht_{ij}(x) - Ht_{ij}(x - e_j)]
            double acc = 0.0;
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                acc += h.value(x, {i, +1}, {j, +1});
                acc += h.value(x, {i, +1}, {j, -1});
            }
            if (std::abs(acc) > 1.0)
                throw OutOfRangeError("curl: |V_k(x)| = " + std::to_string(std::abs(acc)) +
                                      " > 1 at site " + std::to_string(x) +
                                      " (stream tensor too large)");
            v.stored(x, i) = acc;
        }
    }
    return v;
}

std::vector<double> drift_vector(const DriftField& v, std::int64_t site) {
    const int d = v.lattice().dim();
    std::vector<double> phi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        phi[static_cast<std::size_t>(i)] = v.value(site, {i, +1}) - v.value(site, {i, -1});
    return phi;
}

std::vector<double> drift_vector_table(const DriftField& v) {
    const Lattice& lat = v.lattice();
    const int d = lat.dim();
    std::vector<double> phi(static_cast<std::size_t>(lat.nsites() * d));
    for (std::int64_t x = 0; x < lat.nsites(); ++x)
        for (int i = 0; i < d; ++i)
            phi[static_cast<std::size_t>(x * d + i)] =
                v.value(x, {i, +1}) - v.value(x, {i, -1});
    return phi;
}

}  // namespace dwalk
