#include "driftwalk/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

#include "driftwalk/env_io.hpp"
#include "driftwalk/simd/kernels.hpp"
#include "driftwalk/validate.hpp"

namespace dwalk {

namespace {

// FFTW plans are cached per (d, L, sign). Planning is not thread-safe;
// execution through the new-array interface is. FFTW_UNALIGNED lets the
// plans run on plain std::vector storage.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftw_plan get(const Lattice& lat, int sign) {
        std::scoped_lock lock(mu_);
        const Key key{lat.dim(), lat.side(), sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<int> n(static_cast<std::size_t>(lat.dim()), lat.side());
        std::vector<cplx> dummy(static_cast<std::size_t>(lat.nsites()));
        fftw_plan p = fftw_plan_dft(lat.dim(), n.data(),
                                    reinterpret_cast<fftw_complex*>(dummy.data()),
                                    reinterpret_cast<fftw_complex*>(dummy.data()), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

private:
    using Key = std::tuple<int, int, int>;
    std::mutex mu_;
    std::map<Key, fftw_plan> plans_;
};

void execute(const Lattice& lat, int sign, const cplx* in, cplx* out) {
    fftw_plan p = PlanCache::instance().get(lat, sign);
    // FFTW's in-place requirement: in != out is fine for c2c ESTIMATE plans
    // planned in-place? Plans are created in-place on a dummy buffer, so run
    // them in-place here as well: copy first when in != out.
    if (in != out) std::copy(in, in + lat.nsites(), out);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out),
                     reinterpret_cast<fftw_complex*>(out));
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void require_mean_zero(const ScalarLatticeField& f, const char* who) {
    const auto& k = simd::kernels();
    const double total = k.sum(f.values.data(), f.values.size());
    const double scale = std::max(1.0, max_abs(f.values)) * static_cast<double>(f.lat.nsites());
    if (std::abs(total) > 1e-10 * scale)
        throw NotMeanZeroError(std::string(who) + ": input field has nonzero mean " +
                               std::to_string(total / static_cast<double>(f.lat.nsites())));
}

// Applies a per-frequency complex multiplier in Fourier space.
ScalarLatticeField apply_multiplier(const ScalarLatticeField& f,
                                    const std::vector<cplx>& mult) {
    const std::size_t n = f.values.size();
    std::vector<cplx> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = cplx{f.values[i], 0.0};
    std::vector<cplx> hat(n);
    dft_raw(f.lat, buf.data(), hat.data());
    simd::kernels().cmul_inplace(hat.data(), mult.data(), n);
    idft_raw(f.lat, hat.data(), buf.data());
    ScalarLatticeField out(f.lat);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = buf[i].real();
    out.mean_zero = true;
    return out;
}

}  // namespace

void dft_raw(const Lattice& lat, const cplx* in, cplx* out) {
    // FFTW_BACKWARD is the positive-exponent sum.
    execute(lat, FFTW_BACKWARD, in, out);
}

void idft_raw(const Lattice& lat, const cplx* in, cplx* out) {
    execute(lat, FFTW_FORWARD, in, out);
    const double inv = 1.0 / static_cast<double>(lat.nsites());
    auto* d = reinterpret_cast<double*>(out);
    simd::kernels().scale(d, d, inv, 2 * static_cast<std::size_t>(lat.nsites()));
}

SpectralField dft(const ScalarLatticeField& f) {
    SpectralField F(f.lat);
    std::vector<cplx> buf(f.values.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = cplx{f.values[i], 0.0};
    dft_raw(f.lat, buf.data(), F.coeffs.data());
    return F;
}

ScalarLatticeField idft(const SpectralField& F) {
    std::vector<cplx> buf(F.coeffs.size());
    idft_raw(F.lat, F.coeffs.data(), buf.data());
    ScalarLatticeField f(F.lat);
    for (std::size_t i = 0; i < buf.size(); ++i) f.values[i] = buf[i].real();
    return f;
}

cplx grad_multiplier(const Lattice& lat, std::int64_t m, Direction k) {
    const double phase = -k.sign * freq_component(lat, m, k.axis);
    return cplx{std::cos(phase) - 1.0, std::sin(phase)};
}

double dhat(const Lattice& lat, std::int64_t m) {
    double s = 0;
    for (int a = 0; a < lat.dim(); ++a) s += 1.0 - std::cos(freq_component(lat, m, a));
    return s;
}

std::vector<double> dhat_table(const Lattice& lat) {
    std::vector<double> t(static_cast<std::size_t>(lat.nsites()));
    for (std::int64_t m = 0; m < lat.nsites(); ++m) t[static_cast<std::size_t>(m)] = dhat(lat, m);
    return t;
}

ScalarLatticeField riesz(Direction k, const ScalarLatticeField& f) {
    require_mean_zero(f, "riesz");
    const Lattice& lat = f.lat;
    std::vector<cplx> mult(static_cast<std::size_t>(lat.nsites()));
    for (std::int64_t m = 1; m < lat.nsites(); ++m)
        mult[static_cast<std::size_t>(m)] =
            grad_multiplier(lat, m, k) / std::sqrt(2.0 * dhat(lat, m));
    mult[0] = 0.0;
    return apply_multiplier(f, mult);
}

ScalarLatticeField inv_sqrt_lap(const ScalarLatticeField& f) {
    require_mean_zero(f, "inv_sqrt_lap");
    const Lattice& lat = f.lat;
    std::vector<cplx> mult(static_cast<std::size_t>(lat.nsites()));
    for (std::int64_t m = 1; m < lat.nsites(); ++m)
        mult[static_cast<std::size_t>(m)] = cplx{1.0 / std::sqrt(2.0 * dhat(lat, m)), 0.0};
    mult[0] = 0.0;
    return apply_multiplier(f, mult);
}

ScalarLatticeField sqrt_lap(const ScalarLatticeField& f) {
    const Lattice& lat = f.lat;
    std::vector<cplx> mult(static_cast<std::size_t>(lat.nsites()));
    for (std::int64_t m = 0; m < lat.nsites(); ++m)
        mult[static_cast<std::size_t>(m)] = cplx{std::sqrt(2.0 * dhat(lat, m)), 0.0};
    return apply_multiplier(f, mult);
}

std::vector<std::vector<cplx>> direction_spectra(const DriftField& v) {
    const Lattice& lat = v.lattice();
    const auto n = static_cast<std::size_t>(lat.nsites());
    std::vector<std::vector<cplx>> spectra(static_cast<std::size_t>(lat.ndirections()));
    std::vector<cplx> buf(n);
    for (int idx = 0; idx < lat.ndirections(); ++idx) {
        const Direction k = Direction::from_index(idx);
        for (std::int64_t x = 0; x < lat.nsites(); ++x)
            buf[static_cast<std::size_t>(x)] = cplx{v.value(x, k), 0.0};
        spectra[static_cast<std::size_t>(idx)].resize(n);
        dft_raw(lat, buf.data(), spectra[static_cast<std::size_t>(idx)].data());
    }
    return spectra;
}

StreamTensorField helmholtz(const DriftField& v) {
    const Lattice& lat = v.lattice();
    ValidationReport rep = validate_drift(v);
    if (!rep.all_pass())
        throw ValidationError("helmholtz: drift field invalid\n" + rep.summary(), rep);

    const auto n = static_cast<std::size_t>(lat.nsites());
    const int d = lat.dim();

    // vhat for the positive directions only; the pair formula needs no others.
    std::vector<std::vector<cplx>> vhat(static_cast<std::size_t>(d));
    {
        std::vector<cplx> buf(n);
        for (int i = 0; i < d; ++i) {
            for (std::int64_t x = 0; x < lat.nsites(); ++x)
                buf[static_cast<std::size_t>(x)] = cplx{v.stored(x, i), 0.0};
            vhat[static_cast<std::size_t>(i)].resize(n);
            dft_raw(lat, buf.data(), vhat[static_cast<std::size_t>(i)].data());
        }
    }

    StreamTensorField h(lat);
    std::vector<cplx> hhat(n), buf(n);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            hhat[0] = 0.0;
            for (std::int64_t m = 1; m < lat.nsites(); ++m) {
                const auto mi = grad_multiplier(lat, m, {i, +1});
                const auto mj = grad_multiplier(lat, m, {j, +1});
                const auto num = mi * vhat[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] -
                                 mj * vhat[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
                hhat[static_cast<std::size_t>(m)] = num / (2.0 * dhat(lat, m));
            }
            idft_raw(lat, hhat.data(), buf.data());
            const int pidx = lat.pair_index(i, j);
            for (std::int64_t x = 0; x < lat.nsites(); ++x)
                h.stored(x, pidx) = buf[static_cast<std::size_t>(x)].real();
        }
    }
    return h;
}

}  // namespace dwalk
