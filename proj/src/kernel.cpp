#include "agum/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "agum/errors.hpp"

namespace agum {

namespace {

void check_point(int s, double x, const char* who) {
    if (s < 1) throw DomainError(std::string(who) + ": level must be >= 1");
    if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite coordinate");
    if (x < 0) throw DomainError(std::string(who) + ": coordinate must be >= 0");
}

const double kLogHalfSqrtPi = std::log(std::sqrt(std::numbers::pi) / 2.0);

}  // namespace

double transfer_w(int i, int j, double x, double y) {
    if (i < 1 || j < 1) throw DomainError("transfer_w: levels must be >= 1");
    if (i >= j || !(x < y)) return 0.0;
    const int m = j - i - 1;
    if (m == 0) return 1.0;
    return std::exp(m * std::log(y - x) - log_factorial(m));
}

double psi(int /*p*/, int j, double x) {
    if (!(x >= 0) || !std::isfinite(x)) throw DomainError("psi: x must be finite and >= 0");
    if (j >= 0) return hermite_eval(j, x).scaled(-x * x).value();
    return ierfc_scaled_weighted(-j - 1, x).scaled(kLogHalfSqrtPi - x * x).value();
}

double phi(int /*t*/, int j, double y) {
    if (j < 0) throw DomainError("phi: negative index");
    if (!std::isfinite(y)) throw DomainError("phi: non-finite y");
    return hermite_eval(j, y).scaled(-hermite_log_norm(j)).value();
}

WeightedValue kernel_weighted(int s, double x, int t, double y, Gauge gauge) {
    check_point(s, x, "kernel");
    check_point(t, y, "kernel");
    const int L = t / 2;
    std::vector<WeightedValue> terms;
    terms.reserve(L + 1);
    if (L > 0) {
        const auto eta_y = hermite_function_row(t - 2, y);
        const auto eta_x = s >= 2 ? hermite_function_row(s - 2, x) : std::vector<WeightedValue>{};
        for (int l = 1; l <= L; ++l) {
            const int j = s - 2 * l, k = t - 2 * l;
            WeightedValue left;
            if (j >= 0) {
                left = eta_x[j].scaled(hermite_log_gamma(j));
            } else {
                // e^{x^2/2} Psi_j(x) = (sqrt(pi)/2) e^{-x^2/2} e^{x^2} i^m erfc(x)
                left = ierfc_scaled_weighted(-j - 1, x).scaled(kLogHalfSqrtPi - 0.5 * x * x);
            }
            terms.push_back(left * eta_y[k].scaled(-hermite_log_gamma(k)));
        }
    }
    if (s < t && x < y) {
        const int m = t - s - 1;
        const double lw = (m > 0 ? m * std::log(y - x) - log_factorial(m) : 0.0) + 0.5 * (x * x - y * y);
        terms.push_back({-1.0, lw});
    }
    WeightedValue k = weighted_sum(terms);
    if (gauge == Gauge::Plain && k.mantissa != 0.0) k = k.scaled(0.5 * (y * y - x * x));
    if (!std::isfinite(k.mantissa) || !std::isfinite(k.log_scale)) throw NumericError("kernel: overflow");
    return k;
}

double kernel_polynomial_part(int s, double x, int t, double y) {
    if (s < t) throw DomainError("kernel_polynomial_part: requires s >= t");
    std::vector<WeightedValue> terms;
    for (int l = 1; l <= t / 2; ++l)
        terms.push_back((hermite_eval(s - 2 * l, x) * hermite_eval(t - 2 * l, y)).scaled(-hermite_log_norm(t - 2 * l)));
    return weighted_sum(terms).value();
}

Eigen::MatrixXd kernel_matrix(const std::vector<LevelPoint>& points, Gauge gauge) {
    const auto r = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd m(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j)
            m(i, j) = kernel_eval(points[i].s, points[i].x, points[j].s, points[j].x, gauge);
    return m;
}

double corr_det(const std::vector<LevelPoint>& points, Gauge gauge) {
    if (points.empty()) throw DomainError("corr_det: empty point set");
    if (points.size() > 64) throw SizeError("corr_det: more than 64 points");
    return kernel_matrix(points, gauge).partialPivLu().determinant();
}

}  // namespace agum
