#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwalk {

/// A nearest-neighbour step direction on Z^d: an axis and a sign.
/// There are exactly 2d of them; they are enumerated as
/// index = 2*axis + (sign < 0 ? 1 : 0).
struct Direction {
    int axis = 0;
    int sign = +1;

    [[nodiscard]] int index() const noexcept { return 2 * axis + (sign < 0 ? 1 : 0); }
    [[nodiscard]] Direction reversed() const noexcept { return {axis, -sign}; }

    static Direction from_index(int idx) noexcept { return {idx / 2, (idx % 2) ? -1 : +1}; }

    friend bool operator==(const Direction&, const Direction&) = default;
};

/// Geometry of a periodic box [0,L)^d with nearest-neighbour edges.
///
/// Sites are addressed by a flat row-major index (last coordinate fastest).
/// All wrapping is handled here; the rest of the code works with flat
/// indices and Direction values.
class Lattice {
public:
    Lattice(int d, int L) : d_(d), L_(L) {
        if (d < 2 || d > 5) throw std::invalid_argument("lattice: d must be in {2,3,4,5}");
        if (L < 4) throw std::invalid_argument("lattice: L must be >= 4");
        std::int64_t n = 1;
        strides_.assign(static_cast<std::size_t>(d), 1);
        for (int a = d - 1; a >= 0; --a) {
            strides_[static_cast<std::size_t>(a)] = n;
            n *= L;
            if (n > (std::int64_t{1} << 31))
                throw std::invalid_argument("lattice: site count L^d exceeds index space");
        }
        nsites_ = n;
    }

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int side() const noexcept { return L_; }
    [[nodiscard]] std::int64_t nsites() const noexcept { return nsites_; }
    [[nodiscard]] int ndirections() const noexcept { return 2 * d_; }
    [[nodiscard]] std::int64_t stride(int axis) const noexcept {
        return strides_[static_cast<std::size_t>(axis)];
    }

    [[nodiscard]] int coord(std::int64_t site, int axis) const noexcept {
        return static_cast<int>((site / stride(axis)) % L_);
    }

    [[nodiscard]] std::vector<int> coords(std::int64_t site) const {
        std::vector<int> c(static_cast<std::size_t>(d_));
        for (int a = 0; a < d_; ++a) c[static_cast<std::size_t>(a)] = coord(site, a);
        return c;
    }

    [[nodiscard]] std::int64_t site(const std::vector<int>& c) const {
        std::int64_t s = 0;
        for (int a = 0; a < d_; ++a) {
            int x = c[static_cast<std::size_t>(a)] % L_;
            if (x < 0) x += L_;
            s += x * stride(a);
        }
        return s;
    }

    /// Neighbouring site in direction k, with periodic wrap.
    [[nodiscard]] std::int64_t neighbour(std::int64_t site, Direction k) const noexcept {
        const std::int64_t st = stride(k.axis);
        const int x = coord(site, k.axis);
        if (k.sign > 0) return (x == L_ - 1) ? site - (L_ - 1) * st : site + st;
        return (x == 0) ? site + (L_ - 1) * st : site - st;
    }

    [[nodiscard]] std::int64_t neighbour(std::int64_t site, int axis, int sign) const noexcept {
        return neighbour(site, Direction{axis, sign});
    }

    /// Flat index of the unordered axis pair (i,j), i<j, in lexicographic order.
    [[nodiscard]] int pair_index(int i, int j) const noexcept {
        return i * d_ - i * (i + 1) / 2 + (j - i - 1);
    }
    [[nodiscard]] int npairs() const noexcept { return d_ * (d_ - 1) / 2; }

    friend bool operator==(const Lattice& a, const Lattice& b) noexcept {
        return a.d_ == b.d_ && a.L_ == b.L_;
    }

private:
    int d_;
    int L_;
    std::int64_t nsites_ = 0;
    std::vector<std::int64_t> strides_;
};

inline std::string dims_string(const Lattice& lat) {
    return "d=" + std::to_string(lat.dim()) + ",L=" + std::to_string(lat.side());
}

}  // namespace dwalk
