#include "driftwalk/generators.hpp"

#include <algorithm>
#include <cmath>

#include "driftwalk/rng.hpp"

namespace dwalk {

GeneratorKind generator_kind_from_string(const std::string& s) {
    if (s == "plaquette_iid") return GeneratorKind::plaquette_iid;
    if (s == "manhattan") return GeneratorKind::manhattan;
    if (s == "height_field") return GeneratorKind::height_field;
    if (s == "from_file") return GeneratorKind::from_file;
    throw std::invalid_argument("unknown generator kind: " + s);
}

std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::plaquette_iid: return "plaquette_iid";
        case GeneratorKind::manhattan: return "manhattan";
        case GeneratorKind::height_field: return "height_field";
        case GeneratorKind::from_file: return "from_file";
    }
    return "?";
}

std::pair<StreamTensorField, DriftField> gen_plaquette_iid(const GeneratorSpec& spec) {
    const Lattice lat = spec.lattice();
    const double a = spec.effective_amplitude();
    if (a > 1.0 / (2.0 * lat.dim()))
        throw AmplitudeTooLargeError("plaquette amplitude " + std::to_string(a) +
                                     " exceeds 1/(2d)");
    StreamTensorField h(lat);
    Rng rng(derive_seed(spec.seed, 0x706c6171));  // stream tag
    for (std::int64_t x = 0; x < lat.nsites(); ++x) {
        for (int p = 0; p < lat.npairs(); ++p) {
            const double val =
                spec.uniform_law ? a * (2.0 * rng.uniform() - 1.0)
                                 : static_cast<double>(rng.pm_one()) * a;
            h.stored(x, p) = val;
        }
    }
    DriftField v = curl(h);
    return {std::move(h), std::move(v)};
}

DriftField gen_manhattan(const GeneratorSpec& spec, std::optional<int> forced_orientation) {
    const Lattice lat = spec.lattice();
    const int d = lat.dim();
    const int L = lat.side();
    std::int64_t nlines = 1;
    for (int a = 0; a < d - 1; ++a) nlines *= L;
    if (spec.balanced && (nlines % 2) != 0)
        throw UnbalancedTorusError("balanced manhattan requires L^{d-1} even, got " +
                                   std::to_string(nlines));

    // One orientation field per axis, indexed by the flattened coordinates
    // with that axis removed.
    std::vector<std::vector<std::int8_t>> u(static_cast<std::size_t>(d));
    for (int axis = 0; axis < d; ++axis) {
        auto& ua = u[static_cast<std::size_t>(axis)];
        ua.assign(static_cast<std::size_t>(nlines), 0);
        Rng rng(derive_seed(spec.seed, 0x6d616e00ULL + static_cast<std::uint64_t>(axis)));
        if (forced_orientation) {
            std::fill(ua.begin(), ua.end(),
                      static_cast<std::int8_t>(*forced_orientation >= 0 ? +1 : -1));
        } else if (spec.balanced) {
            for (std::int64_t i = 0; i < nlines; ++i)
                ua[static_cast<std::size_t>(i)] = (i < nlines / 2) ? +1 : -1;
            for (std::int64_t i = nlines - 1; i > 0; --i) {
                const auto j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(i + 1)));
                std::swap(ua[static_cast<std::size_t>(i)], ua[static_cast<std::size_t>(j)]);
            }
        } else {
            for (auto& val : ua) val = static_cast<std::int8_t>(rng.pm_one());
        }
    }

    DriftField v(lat);
    for (std::int64_t x = 0; x < lat.nsites(); ++x) {
        for (int axis = 0; axis < d; ++axis) {
            // coordinates with `axis` deleted, row-major over the rest
            std::int64_t line = 0;
            for (int a = 0; a < d; ++a) {
                if (a == axis) continue;
                line = line * L + lat.coord(x, a);
            }
            v.stored(x, axis) = u[static_cast<std::size_t>(axis)][static_cast<std::size_t>(line)];
        }
    }
    return v;
}

std::pair<StreamTensorField, DriftField> gen_height_field(const GeneratorSpec& spec,
                                                          const ScalarLatticeField& psi) {
    const Lattice lat = spec.lattice();
    if (!(psi.lat == lat)) throw std::invalid_argument("height field: psi dims mismatch");
    const int d = lat.dim();
    // Lipschitz check on every dual edge (wrap included).
    for (std::int64_t y = 0; y < lat.nsites(); ++y) {
        for (int axis = 0; axis < d; ++axis) {
            const std::int64_t y2 = lat.neighbour(y, axis, +1);
            const double diff = psi.values[static_cast<std::size_t>(y2)] -
                                psi.values[static_cast<std::size_t>(y)];
            if (std::abs(diff) > 1.0 + 1e-12)
                throw NotLipschitzError("height field not 1-Lipschitz on dual edge " +
                                        std::to_string(y) + " -> " + std::to_string(y2) +
                                        " (axis " + std::to_string(axis) +
                                        ", diff " + std::to_string(diff) + ")");
        }
    }
    StreamTensorField h(lat);
    const double scale = 1.0 / d;
    for (std::int64_t x = 0; x < lat.nsites(); ++x) {
        const double val = scale * psi.values[static_cast<std::size_t>(x)];
        for (int p = 0; p < lat.npairs(); ++p) h.stored(x, p) = val;
    }
    DriftField v = curl(h);
    return {std::move(h), std::move(v)};
}

ScalarLatticeField random_lipschitz_field(const Lattice& lat, std::uint64_t seed) {
    ScalarLatticeField psi(lat);
    Rng rng(derive_seed(seed, 0x6c697073));
    for (auto& val : psi.values)
        val = static_cast<double>(rng.below(static_cast<std::uint64_t>(lat.side())));
    // Lower 1-Lipschitz envelope: each pass can only decrease values and
    // they are bounded below, so the sweep reaches a fixed point.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::int64_t y = 0; y < lat.nsites(); ++y) {
            double nb_min = psi.values[static_cast<std::size_t>(lat.neighbour(y, 0, +1))];
            for (int axis = 0; axis < lat.dim(); ++axis) {
                nb_min = std::min(nb_min,
                                  psi.values[static_cast<std::size_t>(lat.neighbour(y, axis, +1))]);
                nb_min = std::min(nb_min,
                                  psi.values[static_cast<std::size_t>(lat.neighbour(y, axis, -1))]);
            }
            if (psi.values[static_cast<std::size_t>(y)] > nb_min + 1.0) {
                psi.values[static_cast<std::size_t>(y)] = nb_min + 1.0;
                changed = true;
            }
        }
    }
    return psi;
}

std::pair<std::optional<StreamTensorField>, DriftField> generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::plaquette_iid: {
            auto [h, v] = gen_plaquette_iid(spec);
            return {std::move(h), std::move(v)};
        }
        case GeneratorKind::manhattan:
            return {std::nullopt, gen_manhattan(spec)};
        case GeneratorKind::height_field: {
            const ScalarLatticeField psi =
                random_lipschitz_field(spec.lattice(), derive_seed(spec.seed, 0x707369));
            auto [h, v] = gen_height_field(spec, psi);
            return {std::move(h), std::move(v)};
        }
        case GeneratorKind::from_file:
            throw std::invalid_argument("generate: from_file is handled by load_environment");
    }
    throw std::logic_error("generate: unreachable");
}

}  // namespace dwalk
