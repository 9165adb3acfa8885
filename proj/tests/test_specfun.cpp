#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "agum/errors.hpp"
#include "agum/specfun.hpp"
#include "doctest.h"

using namespace agum;
using std::numbers::pi;

namespace {

// Ai via the cosine integral rotated onto the ray arg t = pi/6, where it converges absolutely.
double airy_contour(double x, bool derivative) {
    const std::complex<double> rot(0.5, std::sqrt(3.0) / 2.0);  // e^{i pi/3}
    const std::complex<double> e6 = std::polar(1.0, pi / 6);
    const std::complex<double> ixe6 = std::complex<double>(0, 1) * e6;
    std::vector<double> nodes, weights;
    gauss_legendre(64, nodes, weights);
    std::complex<double> acc = 0.0;
    const double R = 14.0;
    const int panels = 56;
    for (int p = 0; p < panels; ++p) {
        const double a = R * p / panels, b = R * (p + 1) / panels;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double r = 0.5 * (a + b) + 0.5 * (b - a) * nodes[k];
            std::complex<double> v = std::exp(-r * r * r / 3.0 + x * r * ixe6);
            if (derivative) v *= r;
            acc += 0.5 * (b - a) * weights[k] * v;
        }
    }
    if (derivative) return (std::complex<double>(0, 1) * rot * acc).real() / pi;
    return (e6 * acc).real() / pi;
}

double envelope(double x) { return x < 0 ? 1.0 / std::sqrt(pi) / std::pow(-x, 0.25) : 1.0; }

}  // namespace

TEST_CASE("hermite values") {
    CHECK(hermite_eval(0, 3.7).value() == doctest::Approx(1.0));
    CHECK(hermite_eval(1, 0.0).value() == 0.0);
    CHECK(hermite_eval(3, 2.0).value() == doctest::Approx(40.0).epsilon(1e-14));
    CHECK(hermite_eval(2, 1.0, true).value() == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(hermite_eval(2, NAN), DomainError);
    CHECK_THROWS_AS(hermite_eval(-1, 0.0), DomainError);
}

TEST_CASE("hermite norms") {
    CHECK(hermite_norm(0) == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-14));
    CHECK(hermite_norm(1) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
    CHECK(hermite_norm(2) == doctest::Approx(4 * std::sqrt(pi)).epsilon(1e-14));
    // log N_j beyond the factorial table stays consistent with the recurrence N_{j+1} = 2(j+1) N_j
    for (int j : {10, 4094, 4095, 4096, 5000})
        CHECK(std::abs(hermite_log_norm(j + 1) - hermite_log_norm(j) - std::log(2.0 * (j + 1))) < 1e-9);
}

TEST_CASE("hermite recurrence consistency and large degree") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> jd(1, 199);
    std::uniform_real_distribution<double> xd(-10, 10);
    for (int rep = 0; rep < 500; ++rep) {
        const int j = jd(gen);
        const double x = xd(gen);
        const auto hp = hermite_eval(j + 1, x), h = hermite_eval(j, x), hm = hermite_eval(j - 1, x);
        const double L = std::max({hp.log_abs(), h.log_abs(), hm.log_abs()});
        const double a = hp.mantissa * std::exp(hp.log_scale - L);
        const double b = 2 * x * h.mantissa * std::exp(h.log_scale - L);
        const double c = 2.0 * j * hm.mantissa * std::exp(hm.log_scale - L);
        const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
        CHECK(std::abs(a - b + c) <= 1e-9 * scale);
    }
    const auto big = hermite_eval(2000, 100.0);
    CHECK(std::isfinite(big.mantissa));
    CHECK(big.log_abs() > 700.0);
}

TEST_CASE("hermite function row matches direct evaluation") {
    for (double x : {0.0, 0.3, 2.5, 9.0, 31.0}) {
        const auto row = hermite_function_row(300, x);
        for (int j : {0, 1, 2, 7, 50, 299, 300}) {
            const auto h = hermite_eval(j, x, true).scaled(-hermite_log_gamma(j));
            if (h.mantissa == 0.0) {
                CHECK(std::abs(row[j].value()) < 1e-300);
                continue;
            }
            CHECK(row[j].log_abs() == doctest::Approx(h.log_abs()).epsilon(1e-10));
            CHECK(row[j].sign() == h.sign());
        }
    }
}

TEST_CASE("half-line orthogonality") {
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b)
            for (int parity : {0, 1}) {
                const int i = 2 * a + parity, j = 2 * b + parity;
                auto f = [&](double x) {
                    return (hermite_eval(i, x, true) * hermite_eval(j, x, true)).value();
                };
                const double ref = std::sqrt(hermite_norm(i) * hermite_norm(j));
                const double v = quad_semiinf(f, 0.0, QuadOptions{1e-11 * ref, 1e-12, 4000}).value;
                CHECK(std::abs(v - (i == j ? hermite_norm(i) : 0.0)) <= 1e-8 * ref);
            }
}

TEST_CASE("airy reference values") {
    CHECK(airy_ai(0.0) == doctest::Approx(0.35502805389).epsilon(1e-10));
    CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.25881940380).epsilon(1e-10));
    CHECK(airy_ai(30.0) < 1e-30);
    CHECK(airy_ai(30.0) > 0.0);
    CHECK(airy_ai(200.0) == 0.0);
}

TEST_CASE("airy against contour-integral oracle") {
    for (double x = -12.0; x <= 5.0; x += 0.173) {
        const double ref = airy_contour(x, false), refp = airy_contour(x, true);
        const double env = envelope(x);
        INFO(x);
        CHECK(std::abs(airy_ai(x) - ref) <= 1e-10 * std::max(std::abs(ref), env * (x < 0 ? 1.0 : 0.0)));
        CHECK(std::abs(airy_ai_prime(x) - refp) <=
              1e-10 * std::max(std::abs(refp), x < 0 ? env * std::sqrt(-x) : 0.0));
    }
}

TEST_CASE("airy against boost over the accuracy window") {
    for (double x = -15.0; x <= 40.0; x += 0.37) {
        const double ref = boost::math::airy_ai(x), refp = boost::math::airy_ai_prime(x);
        CHECK(std::abs(airy_ai(x) - ref) <= 1e-10 * std::max(std::abs(ref), x < 0 ? envelope(x) : 0.0));
        CHECK(std::abs(airy_ai_prime(x) - refp) <=
              1e-10 * std::max(std::abs(refp), x < 0 ? envelope(x) * std::sqrt(-x) : 0.0));
    }
}

TEST_CASE("airy branch switches agree") {
    for (double xs : {-8.0, 2.0, 8.0}) {
        const double lo = airy_ai(std::nextafter(xs, -100.0)), hi = airy_ai(std::nextafter(xs, 100.0));
        CHECK(std::abs(lo - hi) <= 1e-11 * std::max(std::abs(lo), envelope(xs) * (xs < 0)));
        const double lop = airy_ai_prime(std::nextafter(xs, -100.0)), hip = airy_ai_prime(std::nextafter(xs, 100.0));
        CHECK(std::abs(lop - hip) <= 1e-11 * std::max(std::abs(lop), xs < 0 ? 1.0 : 0.0));
    }
}

TEST_CASE("airy ODE residual") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> xd(-5, 5);
    const double h = 1e-4;
    for (int i = 0; i < 20; ++i) {
        const double x = xd(gen);
        const double d2 = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        CHECK(std::abs(d2 - x * airy_ai(x)) < 1e-7);
    }
}

TEST_CASE("ierfc small values") {
    CHECK(ierfc(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ierfc(1, 0.0) == doctest::Approx(1 / std::sqrt(pi)).epsilon(1e-14));
    CHECK(ierfc(2, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(ierfc(-1, 0.0), DomainError);
    // closed form at the origin: 1 / (2^n Gamma(n/2 + 1))
    for (int n = 0; n <= 60; ++n)
        CHECK(ierfc(n, 0.0) == doctest::Approx(std::exp(-n * std::log(2.0) - std::lgamma(n / 2.0 + 1))).epsilon(1e-12));
}

TEST_CASE("ierfc against the moment integral") {
    // i^n erfc(x) = 2/(n! sqrt(pi)) int_x^inf (y-x)^n e^{-y^2} dy
    for (int n : {0, 1, 2, 3, 5, 8, 13, 21, 34, 60})
        for (double x : {0.0, 0.05, 0.3, 0.9, 1.7, 3.0, 5.5, 10.0}) {
            auto f = [&](double u) { return std::exp(n * std::log(u) - (x + u) * (x + u) + x * x - log_factorial(n)); };
            const double ref = 2.0 / std::sqrt(pi) * quad_semiinf([&](double u) { return u == 0 ? (n == 0 ? std::exp(-x * x + x * x) : 0.0) : f(u); }, 0.0, QuadOptions{0, 1e-13, 8000}).value;
            CHECK(ierfc_scaled(n, x) == doctest::Approx(ref).epsilon(1e-10));
        }
}

TEST_CASE("ierfc is the repeated integral") {
    for (int n = 1; n <= 6; ++n)
        for (double x : {-1.0, 0.0, 0.5, 2.0, 4.0}) {
            const double v = quad_semiinf([&](double t) { return ierfc(n - 1, t); }, x, 1e-14).value;
            CHECK(std::abs(ierfc(n, x) - v) < 1e-8 * std::max(1e-300, std::abs(v)) + 1e-300);
        }
}

TEST_CASE("erfcx continued fraction matches the product form") {
    for (double x : {6.0, 7.0, 9.0, 20.0}) CHECK(erfcx(x) == doctest::Approx(std::exp(x * x) * std::erfc(x)).epsilon(1e-12));
    CHECK(erfcx(1e4) == doctest::Approx(1 / (1e4 * std::sqrt(pi))).epsilon(1e-8));
}

TEST_CASE("quadrature examples") {
    CHECK(quad_semiinf([](double u) { return std::exp(-u); }, 0.0, 1e-13).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quad_semiinf([](double u) { return std::exp(-u * u); }, 0.0, 1e-13).value ==
          doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-12));
    const double ai2 = quad_semiinf([](double u) { return airy_ai(u) * airy_ai(u); }, 0.0, 1e-13).value;
    const double ap = airy_ai_prime(0.0);
    CHECK(ai2 == doctest::Approx(ap * ap).epsilon(1e-11));
    CHECK(ai2 == doctest::Approx(0.0669874837795).epsilon(1e-10));
    CHECK(quad_interval([](double u) { return std::sin(u); }, 0.0, pi).value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(quad_interval([](double u) { return 1.0 / std::sqrt(std::abs(u - 0.3)) * std::sin(1 / (u - 0.3)); },
                                  0.0, 1.0, QuadOptions{1e-14, 1e-14, 50}),
                    AccuracyError);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(10, x, w);
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 18);
    CHECK(s == doctest::Approx(2.0 / 19).epsilon(1e-14));
}
