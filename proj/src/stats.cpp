#include "agum/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "agum/errors.hpp"

namespace agum {

double kolmogorov_q(double t) {
    if (t < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_p(double d, double ne) {
    const double r = std::sqrt(ne);
    return kolmogorov_q((r + 0.12 + 0.11 / r) * d);
}

}  // namespace

TestResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
    if (xs.empty()) throw DomainError("ks_one_sample: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, ks_p(d, n)};
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return {d, ks_p(d, na * nb / (na + nb))};
}

TestResult chi_square(const std::vector<long>& observed, const std::vector<double>& probs) {
    if (observed.size() != probs.size() || observed.size() < 2) throw DomainError("chi_square: bad sizes");
    double total = 0.0;
    for (long o : observed) total += static_cast<double>(o);
    double stat = 0.0;
    int df = -1;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        if (probs[k] <= 0.0) {
            if (observed[k] != 0) return {INFINITY, 0.0};
            continue;
        }
        const double e = total * probs[k];
        stat += (observed[k] - e) * (observed[k] - e) / e;
        ++df;
    }
    if (df < 1) return {stat, 1.0};
    boost::math::chi_squared dist(df);
    return {stat, boost::math::cdf(boost::math::complement(dist, stat))};
}

}  // namespace agum
