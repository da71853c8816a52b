#include "driftwalk/mathutil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace dwalk {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kolmogorov_tail(double x) {
    if (x <= 0.0) return 1.0;
    double s = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        s += (j % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test_standard_normal(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("ks test: no samples");
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double f = normal_cdf(samples[k]);
        d = std::max(d, std::abs(f - static_cast<double>(k + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(k) / n));
    }
    return {d, kolmogorov_tail(std::sqrt(n) * d)};
}

double chi2_tail(double x, double dof) {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("linear_fit: need >= 3 matched points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        rss += r * r;
    }
    fit.slope_se = std::sqrt(rss / (n - 2.0) / sxx);
    return fit;
}

MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe out;
    out.n = xs.size();
    if (xs.empty()) return out;
    double s = 0;
    for (double v : xs) s += v;
    out.mean = s / static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double var = 0;
    for (double v : xs) var += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(var / (static_cast<double>(xs.size()) *
                              (static_cast<double>(xs.size()) - 1.0)));
    return out;
}

}  // namespace dwalk
