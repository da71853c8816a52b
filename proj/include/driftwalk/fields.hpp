#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driftwalk/lattice.hpp"

namespace dwalk {

/// Edge drift field V on the periodic lattice.
///
/// Only the positive directions V_{+e_i}(x) are stored (site-major, axis
/// fastest). Values along negative directions are *derived* through the edge
/// antisymmetry V_{-k}(x) = -V_k(x-k), so that relation can never be violated
/// by construction. Treat instances as immutable once built.
class DriftField {
public:
    DriftField(Lattice lat, std::vector<double> stored)
        : lat_(lat), v_(std::move(stored)) {
        if (v_.size() != static_cast<std::size_t>(lat_.nsites() * lat_.dim()))
            throw std::invalid_argument("drift field: stored size != L^d * d");
    }

    explicit DriftField(Lattice lat)
        : lat_(lat), v_(static_cast<std::size_t>(lat.nsites() * lat.dim()), 0.0) {}

    [[nodiscard]] const Lattice& lattice() const noexcept { return lat_; }

    [[nodiscard]] double stored(std::int64_t site, int axis) const noexcept {
        return v_[static_cast<std::size_t>(site * lat_.dim() + axis)];
    }
    double& stored(std::int64_t site, int axis) noexcept {
        return v_[static_cast<std::size_t>(site * lat_.dim() + axis)];
    }

    /// V_k(x) for any direction; negative directions via antisymmetry.
    [[nodiscard]] double value(std::int64_t site, Direction k) const noexcept {
        if (k.sign > 0) return stored(site, k.axis);
        return -stored(lat_.neighbour(site, k.axis, -1), k.axis);
    }

    [[nodiscard]] const std::vector<double>& data() const noexcept { return v_; }
    std::vector<double>& data() noexcept { return v_; }

private:
    Lattice lat_;
    std::vector<double> v_;
};

/// Antisymmetric stream tensor H_{k,l}(x).
///
/// Stored components are the pairs (e_i, e_j) with i<j, site-major; every
/// other index combination is derived from the tensor symmetries
///   H_{l,k}(x) = -H_{k,l}(x),
///   H_{-k,l}(x) = -H_{k,l}(x-k),   H_{k,-l}(x) = -H_{k,l}(x-l).
class StreamTensorField {
public:
    StreamTensorField(Lattice lat, std::vector<double> stored)
        : lat_(lat), h_(std::move(stored)) {
        if (h_.size() != static_cast<std::size_t>(lat_.nsites() * lat_.npairs()))
            throw std::invalid_argument("stream tensor: stored size != L^d * d(d-1)/2");
    }

    explicit StreamTensorField(Lattice lat)
        : lat_(lat), h_(static_cast<std::size_t>(lat.nsites() * lat.npairs()), 0.0) {}

    [[nodiscard]] const Lattice& lattice() const noexcept { return lat_; }

    [[nodiscard]] double stored(std::int64_t site, int pair) const noexcept {
        return h_[static_cast<std::size_t>(site * lat_.npairs() + pair)];
    }
    double& stored(std::int64_t site, int pair) noexcept {
        return h_[static_cast<std::size_t>(site * lat_.npairs() + pair)];
    }

    /// Fully expanded H_{k,l}(x); zero when the axes coincide.
    [[nodiscard]] double value(std::int64_t site, Direction k, Direction l) const noexcept {
        if (k.axis == l.axis) return 0.0;
        double sign = 1.0;
        std::int64_t s = site;
        if (k.sign < 0) { sign = -sign; s = lat_.neighbour(s, k.axis, -1); }
        if (l.sign < 0) { sign = -sign; s = lat_.neighbour(s, l.axis, -1); }
        if (k.axis < l.axis) return sign * stored(s, lat_.pair_index(k.axis, l.axis));
        return -sign * stored(s, lat_.pair_index(l.axis, k.axis));
    }

    [[nodiscard]] const std::vector<double>& data() const noexcept { return h_; }
    std::vector<double>& data() noexcept { return h_; }

private:
    Lattice lat_;
    std::vector<double> h_;
};

/// One real value per site, with an optional mean-zero tag used by the
/// spectral operators that require it.
struct ScalarLatticeField {
    Lattice lat;
    std::vector<double> values;
    bool mean_zero = false;

    explicit ScalarLatticeField(Lattice l)
        : lat(l), values(static_cast<std::size_t>(l.nsites()), 0.0) {}
    ScalarLatticeField(Lattice l, std::vector<double> v, bool mz = false)
        : lat(l), values(std::move(v)), mean_zero(mz) {
        if (values.size() != static_cast<std::size_t>(lat.nsites()))
            throw std::invalid_argument("scalar field: size != L^d");
    }
};

struct OutOfRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// curl(h): V_k(x) = sum_l H_{k,l}(x). Divergence-free and mean-zero by
/// telescoping, exactly, for any stored tensor. Throws OutOfRangeError if
/// some |V_k(x)| > 1 (stream tensor too large to be a drift).
DriftField curl(const StreamTensorField& h);

/// Local drift vector phi(x), phi_i = V_{e_i}(x) - V_{-e_i}(x). Each entry
/// lies in [-2, 2].
std::vector<double> drift_vector(const DriftField& v, std::int64_t site);

/// phi for all sites, site-major (d entries per site).
std::vector<double> drift_vector_table(const DriftField& v);

}  // namespace dwalk
