// Ai and Ai' on the real line.
//
//   x <= -8      oscillatory asymptotic expansion
//   -8 < x <= 2  Maclaurin series (long double)
//   2 < x < 8    Taylor integration of Ai'' = x Ai, backwards from an anchor at x = 8
//                (the backward direction is the stable one for the decaying solution)
//   x >= 8       exponential asymptotic expansion
#include "agum/specfun.hpp"

#include <cmath>
#include <numbers>

namespace agum {

namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183177L;
constexpr long double kAip0 = -0.258819403792806798405183560189203963L;
constexpr double kNegSwitch = -8.0;
constexpr double kSeriesMax = 2.0;
constexpr double kAnchor = 8.0;

void maclaurin(double xd, double& ai, double& aip) {
    const long double x = xd;
    const long double x3 = x * x * x;
    long double f = 1, g = x, fp = 0, gp = 1;
    long double tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
    fp = tfp;
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3.0L * k - 1) * (3.0L * k));
        tg *= x3 / ((3.0L * k) * (3.0L * k + 1));
        tgp *= x3 / ((3.0L * k - 2) * (3.0L * k));
        if (k > 1) tfp *= x3 / ((3.0L * k - 3) * (3.0L * k - 1));
        f += tf;
        g += tg;
        gp += tgp;
        if (k > 1) fp += tfp;
        const long double mag = std::fabs(tf) + std::fabs(tg) + std::fabs(tgp) + std::fabs(tfp);
        if (k > 3 && mag < 1e-22L * (std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp))) break;
    }
    ai = static_cast<double>(kAi0 * f + kAip0 * g);
    aip = static_cast<double>(kAi0 * fp + kAip0 * gp);
}

// u_k and v_k of the standard Airy asymptotic expansions.
struct Coeffs {
    static constexpr int K = 60;
    double u[K];
    double v[K];
    Coeffs() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k < K; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
            v[k] = -u[k] * (6.0 * k + 1) / (6.0 * k - 1);
        }
    }
};

const Coeffs& coeffs() {
    static const Coeffs c;
    return c;
}

// Sum of (-1)^k c_k / z^k over the selected k, truncated at the smallest term.
double asym_sum(const double* c, double zeta, int start, int stride) {
    double sum = 0.0, last = INFINITY;
    int sign = 1;
    for (int k = start; k < Coeffs::K; k += stride) {
        const double term = c[k] / std::pow(zeta, k);
        if (std::abs(term) > last) break;
        sum += sign * term;
        last = std::abs(term);
        sign = -sign;
        if (last < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

void asym_positive(double x, double& ai, double& aip) {
    const auto& c = coeffs();
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
    const double q = std::sqrt(std::sqrt(x));
    // alternating in k: use stride 1 with sign alternation
    double su = 0.0, sv = 0.0, lu = INFINITY, lv = INFINITY;
    double zk = 1.0;
    for (int k = 0; k < Coeffs::K; ++k) {
        const double tu = c.u[k] / zk, tv = c.v[k] / zk;
        const double s = (k % 2 == 0) ? 1.0 : -1.0;
        if (std::abs(tu) <= lu) {
            su += s * tu;
            lu = std::abs(tu);
        } else {
            lu = -1.0;
        }
        if (std::abs(tv) <= lv) {
            sv += s * tv;
            lv = std::abs(tv);
        } else {
            lv = -1.0;
        }
        if ((lu < 1e-18 || lu < 0) && (lv < 1e-18 || lv < 0)) break;
        zk *= zeta;
    }
    ai = e / q * su;
    aip = -e * q * sv;
}

void asym_negative(double x, double& ai, double& aip) {
    const auto& c = coeffs();
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double q = std::sqrt(std::sqrt(z));
    const double th = zeta - std::numbers::pi / 4;
    const double cs = std::cos(th), sn = std::sin(th);
    const double u_even = asym_sum(c.u, zeta, 0, 2);
    const double u_odd = asym_sum(c.u, zeta, 1, 2);
    const double v_even = asym_sum(c.v, zeta, 0, 2);
    const double v_odd = asym_sum(c.v, zeta, 1, 2);
    const double rp = 1.0 / std::sqrt(std::numbers::pi);
    ai = rp / q * (cs * u_even + sn * u_odd);
    aip = rp * q * (sn * v_even - cs * v_odd);
}

// Integrate y'' = x y from x0 to x1 by Taylor steps.
void taylor_transport(double x0, double x1, double& y, double& yp) {
    const int steps = static_cast<int>(std::ceil(std::abs(x1 - x0) / 0.5));
    const double h = (x1 - x0) / steps;
    double a[48];
    for (int s = 0; s < steps; ++s) {
        const double xc = x0 + s * h;
        a[0] = y;
        a[1] = yp;
        a[2] = xc * a[0] / 2.0;
        for (int k = 1; k + 2 < 48; ++k) a[k + 2] = (xc * a[k] + a[k - 1]) / ((k + 2.0) * (k + 1.0));
        double ny = 0.0, nyp = 0.0, hk = 1.0;
        for (int k = 0; k < 48; ++k) {
            ny += a[k] * hk;
            if (k + 1 < 48) nyp += (k + 1) * a[k + 1] * hk;
            hk *= h;
        }
        y = ny;
        yp = nyp;
    }
}

}  // namespace

void airy_ai_both(double x, double& ai, double& aip) {
    if (std::isnan(x)) {
        ai = aip = NAN;
        return;
    }
    if (x <= kNegSwitch) {
        asym_negative(x, ai, aip);
    } else if (x <= kSeriesMax) {
        maclaurin(x, ai, aip);
    } else if (x < kAnchor) {
        asym_positive(kAnchor, ai, aip);
        taylor_transport(kAnchor, x, ai, aip);
    } else if (x > 105.0) {
        ai = aip = 0.0;
    } else {
        asym_positive(x, ai, aip);
    }
}

double airy_ai(double x) {
    double a, ap;
    airy_ai_both(x, a, ap);
    return a;
}

double airy_ai_prime(double x) {
    double a, ap;
    airy_ai_both(x, a, ap);
    return ap;
}

}  // namespace agum
