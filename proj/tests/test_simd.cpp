#include <doctest.h>

#include <complex>
#include <cstring>
#include <vector>

#include "driftwalk/rng.hpp"
#include "driftwalk/simd/kernels.hpp"

using namespace dwalk;
using simd::Kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
    return v;
}

std::vector<std::complex<double>> random_cvec(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::complex<double>> v(n);
    for (auto& x : v) x = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool bit_equal(const std::vector<std::complex<double>>& a,
               const std::vector<std::complex<double>>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(std::complex<double>)) == 0;
}

// Sizes straddling the vector width, including tails and tiny arrays.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 33, 100, 1023, 4096};

}  // namespace

TEST_CASE("scalar and AVX2 backends are bit-identical") {
    const Kernels& s = simd::scalar_kernels();
    const Kernels* a = simd::avx2_kernels();
    if (!a) {
        MESSAGE("AVX2 unavailable on this CPU; scalar backend is the only one");
        return;
    }

    for (std::size_t n : kSizes) {
        CAPTURE(n);
        const auto x = random_vec(n, 100 + n);
        const auto y = random_vec(n, 200 + n);

        SUBCASE("") {}  // keep capture per size

        {
            std::vector<double> o1(n, 0.5), o2(n, 0.5);
            s.scale(o1.data(), x.data(), 1.7, n);
            a->scale(o2.data(), x.data(), 1.7, n);
            CHECK(bit_equal(o1, o2));
        }
        {
            std::vector<double> o1(n), o2(n);
            s.mul(o1.data(), x.data(), y.data(), n);
            a->mul(o2.data(), x.data(), y.data(), n);
            CHECK(bit_equal(o1, o2));
        }
        {
            auto o1 = random_vec(n, 300 + n);
            auto o2 = o1;
            s.acc(o1.data(), x.data(), n);
            a->acc(o2.data(), x.data(), n);
            CHECK(bit_equal(o1, o2));
        }
        {
            auto o1 = random_vec(n, 400 + n);
            auto o2 = o1;
            s.mul_acc(o1.data(), x.data(), y.data(), n);
            a->mul_acc(o2.data(), x.data(), y.data(), n);
            CHECK(bit_equal(o1, o2));
        }
        {
            auto c1 = random_cvec(n, 500 + n);
            auto c2 = c1;
            const auto m = random_cvec(n, 600 + n);
            s.cmul_inplace(c1.data(), m.data(), n);
            a->cmul_inplace(c2.data(), m.data(), n);
            CHECK(bit_equal(c1, c2));
        }
        {
            auto acc1 = random_cvec(n, 700 + n);
            auto acc2 = acc1;
            const auto u = random_cvec(n, 800 + n);
            const auto v = random_cvec(n, 900 + n);
            s.conj_mul_acc(acc1.data(), u.data(), v.data(), n);
            a->conj_mul_acc(acc2.data(), u.data(), v.data(), n);
            CHECK(bit_equal(acc1, acc2));
        }
        CHECK(s.sum(x.data(), n) == a->sum(x.data(), n));
        CHECK(s.sumsq(x.data(), n) == a->sumsq(x.data(), n));
        CHECK(s.dot(x.data(), y.data(), n) == a->dot(x.data(), y.data(), n));
    }
}

TEST_CASE("kernels compute what they claim (scalar reference vs direct formulas)") {
    const Kernels& s = simd::scalar_kernels();
    const auto x = random_vec(37, 1);
    const auto y = random_vec(37, 2);

    double plain = 0;
    for (double v : x) plain += v;
    CHECK(s.sum(x.data(), x.size()) == doctest::Approx(plain).epsilon(1e-15));

    double dd = 0;
    for (std::size_t i = 0; i < x.size(); ++i) dd += x[i] * y[i];
    CHECK(s.dot(x.data(), y.data(), x.size()) == doctest::Approx(dd).epsilon(1e-14));

    auto c = random_cvec(9, 3);
    const auto m = random_cvec(9, 4);
    auto expect = c;
    for (std::size_t i = 0; i < c.size(); ++i) expect[i] *= m[i];
    s.cmul_inplace(c.data(), m.data(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(c[i].real() == doctest::Approx(expect[i].real()).epsilon(1e-14));
        CHECK(c[i].imag() == doctest::Approx(expect[i].imag()).epsilon(1e-14));
    }
}

TEST_CASE("dispatcher returns a working backend") {
    const Kernels& k = simd::kernels();
    const auto x = random_vec(10, 42);
    CHECK(k.sum(x.data(), x.size()) == simd::scalar_kernels().sum(x.data(), x.size()));
    MESSAGE("dispatched backend: ", std::string(k.name));
}
