#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "driftwalk/fields.hpp"

namespace dwalk {

enum class GeneratorKind { plaquette_iid, manhattan, height_field, from_file };

GeneratorKind generator_kind_from_string(const std::string& s);
std::string to_string(GeneratorKind k);

/// How to build an environment. `amplitude` caps |h| for plaquette_iid
/// (default (1/2d)*(63/64), dyadic). `balanced` forces exactly
/// half-and-half line orientations for manhattan.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::plaquette_iid;
    int d = 2;
    int L = 8;
    double amplitude = -1.0;  // <0: use default for the kind
    std::uint64_t seed = 0;
    bool balanced = true;
    bool uniform_law = false;  // plaquette: U(-a,a) instead of {-a,+a}
    std::string path;          // from_file

    [[nodiscard]] Lattice lattice() const { return Lattice(d, L); }
    [[nodiscard]] double effective_amplitude() const {
        if (amplitude >= 0.0) return amplitude;
        return (1.0 / (2.0 * d)) * (63.0 / 64.0);
    }
};

struct AmplitudeTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnbalancedTorusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotLipschitzError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// i.i.d. plaquette stream tensor and its curl. Every stored h_{e_i,e_j}(x)
/// is an oriented elementary cycle around one plaquette, so this is also
/// the discrete "soup of cycles" construction. Requires
/// amplitude <= 1/(2d); output drift satisfies max|V_k| <= 2d*amplitude.
std::pair<StreamTensorField, DriftField> gen_plaquette_iid(const GeneratorSpec& spec);

/// Randomly oriented Manhattan lattice: axis i lines oriented by
/// u_i : torus^{d-1} -> {-1,+1}. Balanced mode draws a uniformly random
/// exactly-half assignment (requires L^{d-1} even) so the spatial mean is
/// exactly zero. `forced_orientation`, when set, overrides every u_i with
/// that constant (test hook).
DriftField gen_manhattan(const GeneratorSpec& spec,
                         std::optional<int> forced_orientation = std::nullopt);

/// Stream tensor from a 1-Lipschitz integer height field on the dual torus:
/// H_{e_i,e_j}(x) = psi(x + (e_i+e_j)/2)/d. psi.values[x] holds the height
/// at dual site x + (1/2,...,1/2). Throws NotLipschitz (with the offending
/// dual edge) when some nearest-neighbour difference exceeds 1.
std::pair<StreamTensorField, DriftField> gen_height_field(const GeneratorSpec& spec,
                                                          const ScalarLatticeField& psi);

/// Random 1-Lipschitz integer field: iid uniform integers in [0, L)
/// clamped by the monotone pass psi(y) <- min(psi(y), min_neighbours+1)
/// until a fixed point. The fixed point satisfies |psi(y)-psi(y')| <= 1 on
/// every dual edge.
ScalarLatticeField random_lipschitz_field(const Lattice& lat, std::uint64_t seed);

/// Runs the generator named by `spec` (not from_file) and returns the drift
/// plus the stream tensor when the construction has one.
std::pair<std::optional<StreamTensorField>, DriftField> generate(const GeneratorSpec& spec);

}  // namespace dwalk
