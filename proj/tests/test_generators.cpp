#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "driftwalk/env_io.hpp"
#include "driftwalk/generators.hpp"
#include "driftwalk/rng.hpp"
#include "driftwalk/validate.hpp"

using namespace dwalk;

namespace {

GeneratorSpec plaq(int d, int L, std::uint64_t seed, double amp = -1.0) {
    GeneratorSpec s;
    s.kind = GeneratorKind::plaquette_iid;
    s.d = d;
    s.L = L;
    s.seed = seed;
    s.amplitude = amp;
    return s;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("dwtest_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("plaquette: amplitude 0 gives the zero field") {
    auto [h, v] = gen_plaquette_iid(plaq(2, 8, 1, 0.0));
    for (double x : v.data()) CHECK(x == 0.0);
}

TEST_CASE("plaquette: d=2 amplitude 0.24 keeps max |V| <= 0.96") {
    auto [h, v] = gen_plaquette_iid(plaq(2, 16, 2, 0.24));
    double mx = 0;
    for (std::int64_t x = 0; x < v.lattice().nsites(); ++x)
        for (int idx = 0; idx < 4; ++idx)
            mx = std::max(mx, std::abs(v.value(x, Direction::from_index(idx))));
    CHECK(mx <= 0.96);
    CHECK(validate_drift(v).all_pass());
}

TEST_CASE("plaquette: fixed seed is bit-reproducible, amplitude cap enforced") {
    auto [h1, v1] = gen_plaquette_iid(plaq(3, 4, 42));
    auto [h2, v2] = gen_plaquette_iid(plaq(3, 4, 42));
    CHECK(h1.data() == h2.data());
    CHECK(v1.data() == v2.data());
    auto [h3, v3] = gen_plaquette_iid(plaq(3, 4, 43));
    CHECK(h1.data() != h3.data());
    CHECK_THROWS_AS(gen_plaquette_iid(plaq(2, 4, 1, 0.26)), AmplitudeTooLargeError);
}

TEST_CASE("plaquette: uniform-law variant is valid") {
    GeneratorSpec s = plaq(2, 8, 9, 0.2);
    s.uniform_law = true;
    auto [h, v] = gen_plaquette_iid(s);
    CHECK(validate_drift(v).all_pass());
}

TEST_CASE("plaquette: per-component site mean is CLT-small over a seed ensemble") {
    // |mean| <= 4*amplitude/sqrt(L^d) for at least 99 of 100 seeds
    const int L = 32;
    const double amp = 0.2;
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto [h, v] = gen_plaquette_iid(plaq(2, L, 1000 + seed, amp));
        double mean = 0;
        for (std::int64_t x = 0; x < h.lattice().nsites(); ++x) mean += h.stored(x, 0);
        mean /= static_cast<double>(h.lattice().nsites());
        if (std::abs(mean) <= 4.0 * amp / std::sqrt(static_cast<double>(L * L))) ++ok;
    }
    CHECK(ok >= 99);
}

TEST_CASE("manhattan: forced constant orientations give the constant field") {
    GeneratorSpec s;
    s.kind = GeneratorKind::manhattan;
    s.d = 2;
    s.L = 4;
    const DriftField v = gen_manhattan(s, +1);
    for (std::int64_t x = 0; x < v.lattice().nsites(); ++x) {
        CHECK(v.value(x, {0, +1}) == 1.0);
        CHECK(v.value(x, {0, -1}) == -1.0);
        CHECK(v.value(x, {1, +1}) == 1.0);
        CHECK(v.value(x, {1, -1}) == -1.0);
        double div = 0;
        for (int idx = 0; idx < 4; ++idx) div += v.value(x, Direction::from_index(idx));
        CHECK(div == 0.0);
    }
}

TEST_CASE("manhattan: balanced mode zeroes the spatial mean exactly") {
    GeneratorSpec s;
    s.kind = GeneratorKind::manhattan;
    s.d = 3;
    s.L = 4;
    s.seed = 17;
    s.balanced = true;
    const DriftField v = gen_manhattan(s);
    const auto rep = validate_drift(v);
    CHECK(rep.all_pass());
    CHECK(rep.check("zero_spatial_mean")->worst_residual == 0.0);
    CHECK(rep.check("divergence_free")->worst_residual == 0.0);
}

TEST_CASE("manhattan: unbalanced coins usually carry a net drift, reported not thrown") {
    GeneratorSpec s;
    s.kind = GeneratorKind::manhattan;
    s.d = 2;
    s.L = 4;
    s.balanced = false;
    bool found_net_drift = false;
    for (std::uint64_t seed = 0; seed < 20 && !found_net_drift; ++seed) {
        s.seed = seed;
        const DriftField v = gen_manhattan(s);
        double colsum = 0;
        for (std::int64_t x = 0; x < v.lattice().nsites(); ++x) colsum += v.stored(x, 0);
        const auto rep = validate_drift(v);
        CHECK(rep.check("divergence_free")->pass);  // holds balanced or not
        if (colsum != 0.0) {
            CHECK_FALSE(rep.check("zero_spatial_mean")->pass);
            found_net_drift = true;
        }
    }
    CHECK(found_net_drift);
}

TEST_CASE("manhattan: balanced with odd L^{d-1} is rejected") {
    GeneratorSpec s;
    s.kind = GeneratorKind::manhattan;
    s.d = 2;
    s.L = 5;
    s.balanced = true;
    CHECK_THROWS_AS(gen_manhattan(s), UnbalancedTorusError);
    s.balanced = false;
    CHECK_NOTHROW(gen_manhattan(s));
}

TEST_CASE("height field: constant psi curls to zero") {
    GeneratorSpec s;
    s.kind = GeneratorKind::height_field;
    s.d = 2;
    s.L = 4;
    ScalarLatticeField psi(s.lattice());
    for (auto& x : psi.values) x = 3.0;
    auto [h, v] = gen_height_field(s, psi);
    for (double x : v.data()) CHECK(x == 0.0);
}

TEST_CASE("height field: alternating stripes stay Lipschitz with |V| <= 1") {
    GeneratorSpec s;
    s.kind = GeneratorKind::height_field;
    s.d = 2;
    s.L = 4;
    Lattice lat = s.lattice();
    ScalarLatticeField psi(lat);
    for (std::int64_t y = 0; y < lat.nsites(); ++y)
        psi.values[static_cast<std::size_t>(y)] = static_cast<double>(lat.coord(y, 0) % 2);
    auto [h, v] = gen_height_field(s, psi);
    for (std::int64_t x = 0; x < lat.nsites(); ++x)
        for (int idx = 0; idx < 4; ++idx)
            CHECK(std::abs(v.value(x, Direction::from_index(idx))) <= 1.0);
    CHECK(validate_drift(v).all_pass());
}

TEST_CASE("height field: Lipschitz violation names the offending dual edge") {
    GeneratorSpec s;
    s.kind = GeneratorKind::height_field;
    s.d = 2;
    s.L = 4;
    ScalarLatticeField psi(s.lattice());
    psi.values[5] = 7.0;  // jump of 7 against neighbours
    CHECK_THROWS_WITH_AS(gen_height_field(s, psi), doctest::Contains("dual edge"),
                         NotLipschitzError);
}

TEST_CASE("height field: builtin random psi reaches a 1-Lipschitz fixed point") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        Lattice lat(2, 8);
        const ScalarLatticeField psi = random_lipschitz_field(lat, seed);
        for (std::int64_t y = 0; y < lat.nsites(); ++y)
            for (int a = 0; a < 2; ++a) {
                const double diff =
                    psi.values[static_cast<std::size_t>(lat.neighbour(y, a, +1))] -
                    psi.values[static_cast<std::size_t>(y)];
                CHECK(std::abs(diff) <= 1.0);
            }
        GeneratorSpec s;
        s.kind = GeneratorKind::height_field;
        s.d = 2;
        s.L = 8;
        auto [h, v] = gen_height_field(s, psi);
        CHECK(validate_drift(v).all_pass());
    }
}

TEST_CASE("environment files: save/load round-trip is bit-identical") {
    TempDir tmp;
    auto [h, v] = gen_plaquette_iid(plaq(2, 8, 77));
    const auto vpath = (tmp.path / "env.json").string();
    const auto hpath = (tmp.path / "tensor.json").string();
    save_environment(v, vpath);
    save_environment(h, hpath);

    const DriftField v2 = std::get<DriftField>(load_environment(vpath));
    CHECK(v2.data() == v.data());
    const StreamTensorField h2 = std::get<StreamTensorField>(load_environment(hpath));
    CHECK(h2.data() == h.data());

    // and the files themselves are stable under re-save
    save_environment(v2, (tmp.path / "env2.json").string());
    std::ifstream a(vpath), b((tmp.path / "env2.json").string());
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
}

TEST_CASE("environment files: invalid and truncated inputs raise the right errors") {
    TempDir tmp;
    SUBCASE("divergence violation -> ValidationError naming the check") {
        Lattice lat(2, 4);
        DriftField v(lat);
        v.stored(0, 0) = 0.5;
        const auto path = (tmp.path / "bad.json").string();
        save_environment(v, path);
        try {
            load_environment(path);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK_FALSE(e.report.all_pass());
            CHECK_FALSE(e.report.check("divergence_free")->pass);
            CHECK(e.report.check("divergence_free")->worst_site == 0);
        }
    }
    SUBCASE("truncated file -> ParseError") {
        const auto path = (tmp.path / "trunc.json").string();
        std::ofstream(path) << "{\"dims\":{\"d\":2,\"L\":4},\"kind\":\"dri";
        CHECK_THROWS_AS(load_environment(path), ParseError);
    }
    SUBCASE("missing file -> ParseError") {
        CHECK_THROWS_AS(load_environment((tmp.path / "nope.json").string()), ParseError);
    }
    SUBCASE("non-string data -> ParseError") {
        const auto path = (tmp.path / "numeric.json").string();
        std::ofstream(path) << R"({"dims":{"d":2,"L":4},"kind":"drift","data":[0.25]})";
        CHECK_THROWS_AS(load_environment(path), ParseError);
    }
}

TEST_CASE("generate() covers every kind and validates") {
    for (auto kind : {GeneratorKind::plaquette_iid, GeneratorKind::manhattan,
                      GeneratorKind::height_field}) {
        GeneratorSpec s;
        s.kind = kind;
        s.d = 2;
        s.L = 8;
        s.seed = 4;
        auto [h, v] = generate(s);
        CHECK(validate_drift(v).all_pass());
        if (kind == GeneratorKind::manhattan)
            CHECK_FALSE(h.has_value());
        else
            CHECK(h.has_value());
    }
}
