#include "driftwalk/validate.hpp"

#include <cmath>
#include <sstream>

namespace dwalk {

namespace {

void track(CheckResult& c, double residual, std::int64_t site) {
    if (std::abs(residual) > std::abs(c.worst_residual)) {
        c.worst_residual = residual;
        c.worst_site = site;
    }
}

}  // namespace

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << " worst=" << c.worst_residual;
        if (c.worst_site >= 0) os << " at site " << c.worst_site;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
    for (const auto& w : warnings) os << "[warn] " << w << "\n";
    return os.str();
}

ValidationReport validate_drift(const DriftField& v, double tol) {
    const Lattice& lat = v.lattice();
    const int d = lat.dim();
    ValidationReport rep;

    CheckResult antisym{"antisymmetry"};
    CheckResult divfree{"divergence_free"};
    CheckResult bounded{"bounded_by_one"};
    CheckResult meanzero{"zero_spatial_mean"};

    std::int64_t worst_zero_rate_site = -1;
    int worst_zero_rates = 0;

    std::vector<double> colsum(static_cast<std::size_t>(d), 0.0);
    for (std::int64_t x = 0; x < lat.nsites(); ++x) {
        double div = 0.0;
        int zero_rates = 0;
        for (int idx = 0; idx < lat.ndirections(); ++idx) {
            const Direction k = Direction::from_index(idx);
            const double val = v.value(x, k);
            div += val;
            // expanded-field re-check of V_{-k}(x+k) = -V_k(x)
            const double rev = v.value(lat.neighbour(x, k), k.reversed());
            track(antisym, val + rev, x);
            if (std::abs(val) > 1.0) {
                track(bounded, std::abs(val) - 1.0, x);
                bounded.pass = false;
            }
            if (val <= -1.0) ++zero_rates;
        }
        track(divfree, div, x);
        for (int i = 0; i < d; ++i) colsum[static_cast<std::size_t>(i)] += v.stored(x, i);
        if (zero_rates > worst_zero_rates) {
            worst_zero_rates = zero_rates;
            worst_zero_rate_site = x;
        }
    }
    for (int i = 0; i < d; ++i) {
        if (std::abs(colsum[static_cast<std::size_t>(i)]) > std::abs(meanzero.worst_residual)) {
            meanzero.worst_residual = colsum[static_cast<std::size_t>(i)];
            meanzero.worst_site = -1;
            meanzero.detail = "axis " + std::to_string(i);
        }
    }

    antisym.pass = std::abs(antisym.worst_residual) <= tol;
    divfree.pass = std::abs(divfree.worst_residual) <= tol;
    meanzero.pass = std::abs(meanzero.worst_residual) <= tol;

    if (worst_zero_rates >= 2 * d - 1) {
        rep.warnings.push_back("site " + std::to_string(worst_zero_rate_site) + " has " +
                               std::to_string(worst_zero_rates) +
                               " zero rates (possible reducibility)");
    }

    rep.checks = {antisym, divfree, bounded, meanzero};
    return rep;
}

ValidationReport validate_stream(const StreamTensorField& h, double tol) {
    const Lattice& lat = h.lattice();
    ValidationReport rep;

    CheckResult antisym{"tensor_antisymmetry"};
    CheckResult shift_k{"shift_symmetry_first_index"};
    CheckResult shift_l{"shift_symmetry_second_index"};

    for (std::int64_t x = 0; x < lat.nsites(); ++x) {
        for (int ki = 0; ki < lat.ndirections(); ++ki) {
            const Direction k = Direction::from_index(ki);
            for (int li = 0; li < lat.ndirections(); ++li) {
                const Direction l = Direction::from_index(li);
                const double hkl = h.value(x, k, l);
                track(antisym, h.value(x, l, k) + hkl, x);
                // H_{-k,l}(x) = -H_{k,l}(x-k)
                const double lhs_k = h.value(x, k.reversed(), l);
                const double rhs_k = -h.value(lat.neighbour(x, k.reversed()), k, l);
                track(shift_k, lhs_k - rhs_k, x);
                const double lhs_l = h.value(x, k, l.reversed());
                const double rhs_l = -h.value(lat.neighbour(x, l.reversed()), k, l);
                track(shift_l, lhs_l - rhs_l, x);
            }
        }
    }
    antisym.pass = std::abs(antisym.worst_residual) <= tol;
    shift_k.pass = std::abs(shift_k.worst_residual) <= tol;
    shift_l.pass = std::abs(shift_l.worst_residual) <= tol;
    rep.checks = {antisym, shift_k, shift_l};
    return rep;
}

}  // namespace dwalk
