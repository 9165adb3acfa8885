#include "agum/limits.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "agum/errors.hpp"
#include "agum/kernel.hpp"
#include "agum/specfun.hpp"

namespace agum {

namespace {

using std::numbers::pi;

// Unit chunks keep each adaptive call on a few oscillations.
double quad_chunked(const Integrand& f, double a, double b, double tol, double h = 1.0) {
    if (b <= a) return 0.0;
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    const double step = (b - a) / pieces;
    const QuadOptions opt{tol / pieces, 1e-12, 4000};
    double s = 0.0;
    for (int i = 0; i < pieces; ++i) s += quad_interval(f, a + i * step, a + (i + 1) * step, opt).value;
    return s;
}

double airy_product_upper(double x, double y, double damping) {
    auto f = [=](double u) { return std::exp(-damping * u) * airy_ai(x + u) * airy_ai(y + u); };
    const double a0 = std::max(0.0, -std::min(x, y));
    return quad_chunked(f, 0.0, a0, 1e-12) + quad_semiinf(f, a0, 1e-12).value;
}

int integer_delta(double tx, double ty) {
    const double d = ty - tx;
    if (std::abs(d - std::round(d)) > 1e-12) throw DomainError("bead_kernel: tau difference must be an integer");
    return static_cast<int>(std::lround(d));
}

double hard_phase(int s) { return pi * (1 - s) / 2.0; }

double hard_impl(int s, double x, int t, double y, double eps) {
    const double ps = hard_phase(s), pt = hard_phase(t);
    if (t >= s) {
        auto f = [=](double u) { return std::pow(u, t - s) * std::cos(pi * u * x - ps) * std::cos(pi * u * y - pt); };
        const double w = std::max(std::abs(x), std::abs(y));
        return 2.0 * quad_chunked(f, 0.0, 1.0, 1e-13, std::max(0.05, 2.0 / std::max(w, 1.0)));
    }
    const int m = s - t;
    return -(oscillatory_tail(m, pi * (x - y), -ps + pt, eps) + oscillatory_tail(m, pi * (x + y), -ps - pt, eps));
}

double scaled_from_kernel(int sj, double yj, int sl, double yl, double log_factor) {
    const WeightedValue k = kernel_weighted(sj, yj, sl, yl, Gauge::Symmetric);
    if (k.mantissa == 0.0) return 0.0;
    const double v = k.sign() * std::exp(k.log_abs() + log_factor);
    if (!std::isfinite(v)) throw NumericError("scaled kernel: value overflows double");
    return v;
}

int int_label(double c, const char* who) {
    if (c < 0 || std::abs(c - std::round(c)) > 1e-12) throw DomainError(std::string(who) + ": c must be a nonnegative integer");
    return static_cast<int>(std::lround(c));
}

}  // namespace

double airy_kernel(double x, double y) {
    if (x < -10 || y < -10) throw DomainError("airy_kernel: arguments below -10");
    return airy_product_upper(x, y, 0.0);
}

double ext_airy_kernel(double tx, double x, double ty, double y) {
    const double d = ty - tx;
    if (d >= 0) return airy_product_upper(x, y, d);
    const double a = -d;
    if (a < 0.05) throw DomainError("ext_airy_kernel: |tau_y - tau_x| < 0.05 on the lower branch");
    auto f = [=](double u) { return std::exp(-a * u) * airy_ai(x - u) * airy_ai(y - u); };
    const double U = std::max({0.0, x, y}) + 40.0 / a;
    return -quad_chunked(f, 0.0, U, 1e-11);
}

double bead_kernel(double tx, double x, double ty, double y) {
    const int delta = integer_delta(tx, ty);
    const double d = x - y;
    const double phase = pi * delta / 2.0;
    if (delta >= 0) {
        auto f = [=](double u) { return std::pow(u, delta) * std::cos(pi * u * d + phase); };
        return quad_chunked(f, 0.0, 1.0, 1e-13, std::max(0.05, 2.0 / std::max(std::abs(d), 1.0)));
    }
    return -oscillatory_tail(-delta, pi * d, phase);
}

double oscillatory_tail(int m, double omega, double phase, double eps) {
    if (eps < 0) throw DomainError("oscillatory_tail: negative damping");
    const std::complex<double> k(eps, -omega);
    if (std::abs(k) < 1e-14) {
        if (std::abs(std::cos(phase)) < 1e-12) return 0.0;
        if (m >= 2) return std::cos(phase) / (m - 1);
        throw DomainError("oscillatory_tail: divergent integral");
    }
    if (m <= 0 && eps == 0.0) throw DomainError("oscillatory_tail: not convergent for m <= 0 without damping");
    const double kabs = std::abs(k);
    const double U = std::max(1.0, (60.0 + std::abs(m)) / kabs);
    auto f = [=](double u) { return std::pow(u, -m) * std::exp(-eps * u) * std::cos(omega * u + phase); };
    const double h = std::max(0.02, std::min(1.0, 4.0 * pi / std::max(std::abs(omega), 1e-300)));
    const double body = quad_chunked(f, 1.0, U, 1e-13, h);
    // int_U^inf u^{-m} e^{-ku} du ~ e^{-kU} sum_j (-1)^j (m)_j / (k^{j+1} U^{m+j})
    std::complex<double> term = 1.0 / (k * std::pow(U, m)), sum = 0.0;
    for (int j = 0; j < 80; ++j) {
        sum += term;
        const std::complex<double> next = -term * static_cast<double>(m + j) / (k * U);
        if (std::abs(next) < 1e-18 * std::abs(sum) || std::abs(next) > std::abs(term)) break;
        term = next;
    }
    const std::complex<double> tail = std::exp(std::complex<double>(0, phase)) * std::exp(-k * U) * sum;
    return body + tail.real();
}

double hard_kernel(int s, double x, int t, double y) { return hard_impl(s, x, t, y, 0.0); }

double hard_kernel_damped(int s, double x, int t, double y, double eps) {
    if (eps <= 0) throw DomainError("hard_kernel_damped: eps must be positive");
    return hard_impl(s, x, t, y, eps);
}

double scaled_kernel_soft(int n, int cj, double Yj, int cl, double Yl, const ScalingOptions& opt) {
    if (n < 1 || cj < 0 || cl < 0) throw DomainError("scaled_kernel_soft: need n >= 1, c >= 0");
    const int sj = 2 * n + 1 - cj, sl = 2 * n + 1 - cl;
    if (sj < 2 || sl < 2) throw DomainError("scaled_kernel_soft: species below 2");
    const double scale = std::sqrt(2.0) * std::pow(2.0 * n, 1.0 / 6.0);
    auto centre = [&](int s) { return opt.centering == Centering::Midpoint ? std::sqrt(2.0 * s - 1) : std::sqrt(4.0 * n); };
    const double gauge = opt.gauge == LimitGauge::Exact ? hermite_log_gamma(sl - 1) - hermite_log_gamma(sj - 1)
                                                        : 0.5 * (cj - cl) * std::log(4.0 * n);
    return scaled_from_kernel(sj, centre(sj) + Yj / scale, sl, centre(sl) + Yl / scale, gauge - std::log(scale));
}

double scaled_kernel_soft2(int n, double cj, double Yj, double cl, double Yl, const ScalingOptions& opt) {
    if (n < 1 || cj < 0 || cl < 0) throw DomainError("scaled_kernel_soft2: need n >= 1, c >= 0");
    const double n23 = std::pow(2.0 * n, 2.0 / 3.0);
    const int sj = static_cast<int>(std::lround(2.0 * n - 2.0 * cj * n23));
    const int sl = static_cast<int>(std::lround(2.0 * n - 2.0 * cl * n23));
    if (sj < 2 || sl < 2) throw DomainError("scaled_kernel_soft2: species below 2");
    auto y = [&](int s, double Y) {
        const double c = opt.centering == Centering::Midpoint ? std::sqrt(2.0 * s - 1) : std::sqrt(2.0 * s);
        return c + Y / (std::sqrt(2.0) * std::pow(s, 1.0 / 6.0));
    };
    double gauge;
    if (opt.gauge == LimitGauge::Exact) {
        gauge = hermite_log_gamma(sl - 1) - hermite_log_gamma(sj - 1);
    } else {
        // c-part of the asymptotic gauge, at the c realised by the rounded species
        auto log_beta = [&](int s) {
            const double c = (2.0 * n - s) / (2.0 * n23);
            return -c * n23 * std::log(4.0 * n) + std::cbrt(2.0 * n) * c * c + 2.0 * c * c * c / 3.0;
        };
        gauge = log_beta(sl) - log_beta(sj);
    }
    const double lp = -std::log(std::sqrt(2.0) * std::pow(2.0 * n, 1.0 / 6.0));
    return scaled_from_kernel(sj, y(sj, Yj), sl, y(sl, Yl), gauge + lp);
}

double scaled_kernel_hard(int n, int cj, double Yj, int cl, double Yl, double offset, LimitGauge gauge) {
    if (n < 1 || cj < 0 || cl < 0) throw DomainError("scaled_kernel_hard: need n >= 1, c >= 0");
    const int sj = 2 * n + 1 - cj, sl = 2 * n + 1 - cl;
    if (sj < 2 || sl < 2) throw DomainError("scaled_kernel_hard: species below 2");
    const double h = pi / (2.0 * std::sqrt(static_cast<double>(n)));
    const double yj = h * Yj + offset, yl = h * Yl + offset;
    if (yj < 0 || yl < 0) throw DomainError("scaled_kernel_hard: coordinates must be nonnegative");
    const double g = gauge == LimitGauge::Exact ? hermite_log_gamma(sl) - hermite_log_gamma(sj)
                                                : (cj - cl) * (std::log(2.0) + 0.5 * std::log(static_cast<double>(n)));
    return scaled_from_kernel(sj, yj, sl, yl, g + std::log(h));
}

double limit_value(Regime regime, ScaledPoint a, ScaledPoint b) {
    switch (regime) {
        case Regime::Soft: return airy_kernel(a.Y, b.Y);
        case Regime::Soft2: return ext_airy_kernel(a.c, a.Y, b.c, b.Y);
        case Regime::Hard: return hard_kernel(int_label(a.c, "hard"), a.Y, int_label(b.c, "hard"), b.Y);
    }
    throw DomainError("limit_value: unknown regime");
}

double scaled_value(Regime regime, int n, ScaledPoint a, ScaledPoint b, const ScalingOptions& opt) {
    switch (regime) {
        case Regime::Soft:
            return scaled_kernel_soft(n, int_label(a.c, "soft"), a.Y, int_label(b.c, "soft"), b.Y, opt);
        case Regime::Soft2: return scaled_kernel_soft2(n, a.c, a.Y, b.c, b.Y, opt);
        case Regime::Hard:
            return scaled_kernel_hard(n, int_label(a.c, "hard"), a.Y, int_label(b.c, "hard"), b.Y, 0.0,
                                      LimitGauge::Asymptotic);
    }
    throw DomainError("scaled_value: unknown regime");
}

std::vector<ConvergenceRow> convergence(Regime regime, const std::vector<int>& ns, ScaledPoint a, ScaledPoint b,
                                        const ScalingOptions& opt) {
    const double lim = limit_value(regime, a, b);
    std::vector<ConvergenceRow> rows;
    for (int n : ns) {
        ConvergenceRow r;
        r.n = n;
        r.value = scaled_value(regime, n, a, b, opt);
        r.limit = lim;
        r.abs_error = std::abs(r.value - lim);
        r.rel_error = std::abs(lim) > 1e-12 ? r.abs_error / std::abs(lim) : r.abs_error;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace agum
