#pragma once

#include <cstddef>
#include <vector>

namespace dwalk {

double normal_cdf(double x);

/// P(K > x) for the Kolmogorov distribution, 2 sum_j (-1)^{j-1} e^{-2 j^2 x^2}.
double kolmogorov_tail(double x);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// One-sample KS test of `samples` against the standard normal.
KsResult ks_test_standard_normal(std::vector<double> samples);

/// Upper tail of the chi-squared distribution with `dof` degrees of freedom.
double chi2_tail(double x, double dof);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};
MeanSe mean_se(const std::vector<double>& xs);

}  // namespace dwalk
