/// @file stats.hpp
/// @brief Goodness-of-fit helpers used by the test suites and `verify`.
#pragma once

#include <functional>
#include <vector>

namespace agum {

struct TestResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// Kolmogorov tail Q(t) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 t^2}.
double kolmogorov_q(double t);

/// One-sample KS against a continuous CDF (Stephens' finite-n correction).
TestResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);

/// Two-sample KS.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Pearson chi-square of observed counts against expected probabilities (sum to 1).
TestResult chi_square(const std::vector<long>& observed, const std::vector<double>& probs);

}  // namespace agum
