// Repeated integrals of erfc, carried in the scaled form E_n(x) = e^{x^2} i^n erfc(x).
// E_{-1} = 2/sqrt(pi), E_0 = erfcx(x), 2n E_n = E_{n-2} - 2x E_{n-1}.
// Forward recurrence is stable for x <= 0 and for small x*sqrt(n); otherwise the
// wanted solution is minimal and we run Miller's backward recurrence normalised by E_{-1}.
#include <cmath>
#include <numbers>

#include "agum/errors.hpp"
#include "agum/specfun.hpp"

namespace agum {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955125739;

double erfcx_cf(double x) {
    // 1/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))) evaluated bottom-up
    double t = x;
    for (int k = 160; k >= 1; --k) t = x + 0.5 * k / t;
    return 1.0 / (std::sqrt(std::numbers::pi) * t);
}

}  // namespace

double erfcx(double x) {
    if (!std::isfinite(x)) throw DomainError("erfcx: non-finite x");
    if (x < 6.0) return std::exp(x * x) * std::erfc(x);
    return erfcx_cf(x);
}

WeightedValue ierfc_scaled_weighted(int n, double x) {
    if (n < 0) throw DomainError("ierfc: negative order");
    if (!std::isfinite(x)) throw DomainError("ierfc: non-finite x");
    const double e0 = erfcx(x);
    if (n == 0) return {e0, 0.0};
    if (x <= 0.0 || x * std::sqrt(2.0 * n) < 4.5) {
        double em1 = kTwoOverSqrtPi, e = e0;
        double log_s = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double next = (em1 - 2.0 * x * e) / (2.0 * k);
            em1 = e;
            e = next;
            if (std::abs(e) < 1e-250 && std::abs(em1) < 1e-250) {
                e *= 1e250;
                em1 *= 1e250;
                log_s -= 250 * std::numbers::ln10;
            }
        }
        WeightedValue r{e, log_s};
        r.normalize();
        return r;
    }
    const double root = std::sqrt(2.0 * n) + 20.0 / x;
    const int start = static_cast<int>(std::ceil(0.5 * root * root)) + 16;
    double ek = 0.0, ekm1 = 1e-300;  // E_{start+1}, E_{start}
    double saved = 0.0, saved_log = 0.0, log_s = 0.0;
    for (int k = start + 1; k >= 1; --k) {
        // ek = E_k, ekm1 = E_{k-1};  E_{k-2} = 2k E_k + 2x E_{k-1}
        const double ekm2 = 2.0 * k * ek + 2.0 * x * ekm1;
        ek = ekm1;
        ekm1 = ekm2;
        if (k - 2 == n) {
            saved = ekm1;
            saved_log = log_s;
        }
        if (std::abs(ekm1) > 1e250) {
            ek *= 1e-250;
            ekm1 *= 1e-250;
            log_s += 250 * std::numbers::ln10;
        }
    }
    // ekm1 now holds E_{-1} (scaled by exp(log_s))
    WeightedValue r{saved * kTwoOverSqrtPi / ekm1, saved_log - log_s};
    r.normalize();
    return r;
}

double ierfc_scaled(int n, double x) { return ierfc_scaled_weighted(n, x).value(); }

double ierfc(int n, double x) { return ierfc_scaled_weighted(n, x).scaled(-x * x).value(); }

}  // namespace agum
