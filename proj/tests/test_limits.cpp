#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>

#include "agum/errors.hpp"
#include "agum/limits.hpp"
#include "agum/specfun.hpp"
#include "doctest.h"

using namespace agum;
using std::numbers::pi;

namespace {

// Christoffel-Darboux form of the Airy kernel.
double airy_closed(double x, double y) {
    using boost::math::airy_ai;
    using boost::math::airy_ai_prime;
    if (std::abs(x - y) < 1e-9) return airy_ai_prime(x) * airy_ai_prime(x) - x * airy_ai(x) * airy_ai(x);
    return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y);
}

// Composite Gauss-Legendre with Boost Ai (independent of the library quadrature and Airy code).
double gl_integral(const std::function<double(double)>& f, double a, double b, int pieces) {
    std::vector<double> x, w;
    gauss_legendre(20, x, w);
    const double h = (b - a) / pieces;
    double s = 0.0;
    for (int p = 0; p < pieces; ++p) {
        const double m = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < x.size(); ++i) s += 0.5 * h * w[i] * f(m + 0.5 * h * x[i]);
    }
    return s;
}

// int_1^inf u^{-m} cos(wu + phi) du after three integrations by parts; the remainder is
// absolutely convergent with a u^{-m-3} envelope and is cut at U.
double tail_by_parts(int m, double w, double phi) {
    const double c1 = std::sin(w + phi), c2 = std::cos(w + phi), c3 = std::sin(w + phi);
    const double boundary = -c1 / w + m * c2 / (w * w) + m * (m + 1) * c3 / (w * w * w);
    auto rem = [=](double u) { return std::pow(u, -m - 3) * std::sin(w * u + phi); };
    const double U = 400.0;
    const double r = gl_integral(rem, 1.0, U, 4000);
    return boundary - m * (m + 1) * (m + 2) / (w * w * w) * r;
}

}  // namespace

TEST_CASE("airy kernel against the closed form") {
    CHECK(airy_kernel(0, 0) == doctest::Approx(0.0669874837795).epsilon(1e-10));
    for (double x : {-8.0, -3.0, -0.5, 0.0, 1.2, 4.0})
        for (double y : {-6.0, -1.0, 0.0, 0.7, 3.0}) {
            CHECK(std::abs(airy_kernel(x, y) - airy_closed(x, y)) < 1e-9);
            CHECK(airy_kernel(x, y) == doctest::Approx(airy_kernel(y, x)).epsilon(1e-12));
        }
    CHECK(airy_kernel(8, 8) < 1e-8);
    CHECK_THROWS_AS(airy_kernel(-11, 0), DomainError);
}

TEST_CASE("extended airy kernel") {
    for (double x : {-2.0, 0.0, 1.5}) CHECK(ext_airy_kernel(0.3, x, 0.3, 0.4) == doctest::Approx(airy_kernel(x, 0.4)).epsilon(1e-10));
    const double v = ext_airy_kernel(0, 0, 1, 0);
    CHECK(v > 0);
    CHECK(v < airy_kernel(0, 0));
    CHECK(ext_airy_kernel(0, 0, 0.5, 0) == doctest::Approx(0.0543167505).epsilon(1e-8));
    // swapping the times switches to the lower branch
    CHECK(ext_airy_kernel(0.5, 0, 0, 0) == doctest::Approx(-0.3169405961).epsilon(1e-8));
    // upper and lower branches against independent Boost-Ai quadrature
    using boost::math::airy_ai;
    for (double d : {0.5, 1.0, 2.0}) {
        const double x = -1.0, y = 0.6;
        const double up = gl_integral([=](double u) { return std::exp(-d * u) * airy_ai(x + u) * airy_ai(y + u); }, 0, 40, 400);
        const double lo = -gl_integral([=](double u) { return std::exp(-d * u) * airy_ai(x - u) * airy_ai(y - u); }, 0, 45 / d, 800);
        CHECK(std::abs(ext_airy_kernel(0, x, d, y) - up) < 1e-9);
        CHECK(std::abs(ext_airy_kernel(d, x, 0, y) - lo) < 1e-9);
    }
    // depends on the times only through their difference
    CHECK(ext_airy_kernel(1.0, 0.2, 0.3, -0.5) == doctest::Approx(ext_airy_kernel(2.7, 0.2, 2.0, -0.5)).epsilon(1e-10));
    CHECK_THROWS_AS(ext_airy_kernel(0.01, 0, 0, 0), DomainError);
}

TEST_CASE("bead kernel") {
    CHECK(bead_kernel(0, 1.3, 0, 1.3) == doctest::Approx(1.0).epsilon(1e-13));
    for (double d : {0.2, 1.7, 4.5}) CHECK(bead_kernel(0, d, 0, 0) == doctest::Approx(std::sin(pi * d) / (pi * d)).epsilon(1e-12));
    CHECK(std::abs(bead_kernel(0, 0.4, 1, 0.4)) < 1e-14);
    // (1/2) int_{-1}^{1} (is)^2 e^{i s pi d} ds, evaluated by brute force in complex form
    const double d = 0.7;
    const double direct = gl_integral([=](double s) { return -0.5 * s * s * std::cos(pi * s * d); }, -1, 1, 20);
    CHECK(bead_kernel(0, d, 2, 0) == doctest::Approx(direct).epsilon(1e-12));
    // complementary branch: -(1/2) int_{|s|>1} (is)^{-2} e^{i s pi d} ds = int_1^inf s^{-2} cos(pi s d) ds
    CHECK(bead_kernel(2, d, 0, 0) == doctest::Approx(tail_by_parts(2, pi * d, 0.0)).epsilon(1e-8));
    CHECK(bead_kernel(5.5, 0.3, 5.5, 1.1) == doctest::Approx(bead_kernel(0, 1.0, 0, 1.8)).epsilon(1e-12));
    CHECK_THROWS_AS(bead_kernel(0, 0, 0.5, 0), DomainError);
}

TEST_CASE("oscillatory tail") {
    for (int m : {1, 2, 3})
        for (double w : {0.7, 3.0, 25.0})
            for (double phi : {0.0, 0.4, -1.3})
                CHECK(std::abs(oscillatory_tail(m, w, phi) - tail_by_parts(m, w, phi)) < 1e-9);
    // damped: absolutely convergent, compare with a truncated brute-force integral
    const double damped = gl_integral([](double u) { return std::exp(-0.5 * u) * std::cos(2 * u + 0.3) / u; }, 1, 80, 2000);
    CHECK(std::abs(oscillatory_tail(1, 2.0, 0.3, 0.5) - damped) < 1e-11);
    CHECK(oscillatory_tail(3, 0.0, 0.2) == doctest::Approx(std::cos(0.2) / 2));
    CHECK(oscillatory_tail(1, 0.0, pi / 2) == 0.0);
    CHECK_THROWS_AS(oscillatory_tail(1, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(oscillatory_tail(0, 1.0, 0.0), DomainError);
}

TEST_CASE("hard kernel special cases") {
    for (int s : {0, 2, 4})
        for (double x : {0.3, 1.1, 2.6}) CHECK(hard_kernel(s, x, s, x) == doctest::Approx(1 - std::sin(2 * pi * x) / (2 * pi * x)).epsilon(1e-12));
    CHECK(hard_kernel(1, 0, 1, 0) == doctest::Approx(2.0));
    CHECK(std::abs(hard_kernel(0, 1e-6, 0, 1e-6)) < 1e-10);
    // K^-(x,y) = sinc((x-y)) + sinc((x+y)) in units of pi
    const double x = 0.4, y = 1.3;
    CHECK(hard_kernel(1, x, 1, y) == doctest::Approx(std::sin(pi * (x - y)) / (pi * (x - y)) + std::sin(pi * (x + y)) / (pi * (x + y))).epsilon(1e-12));
    CHECK(hard_kernel(2, x, 2, y) == doctest::Approx(hard_kernel(2, y, 2, x)).epsilon(1e-12));
}

TEST_CASE("hard kernel complementary branch") {
    // t - s = -2: absolutely convergent, against the integration-by-parts oracle
    const int s = 3, t = 1;
    const double x = 0.4, y = 0.9;
    const double ps = pi * (1 - s) / 2, pt = pi * (1 - t) / 2;
    const double want = -(tail_by_parts(2, pi * (x - y), -ps + pt) + tail_by_parts(2, pi * (x + y), -ps - pt));
    CHECK(std::abs(hard_kernel(s, x, t, y) - want) < 1e-9);
    // t - s = -1: damping converges linearly in eps
    const double exact = hard_kernel(2, 0.3, 1, 0.7);
    const double e1 = std::abs(hard_kernel_damped(2, 0.3, 1, 0.7, 1e-2) - exact);
    const double e2 = std::abs(hard_kernel_damped(2, 0.3, 1, 0.7, 1e-3) - exact);
    CHECK(e1 < 1e-2);
    CHECK(e2 < e1 / 5);
    CHECK(std::abs(2 * hard_kernel_damped(2, 0.3, 1, 0.7, 1e-4) - hard_kernel_damped(2, 0.3, 1, 0.7, 2e-4) - exact) < 1e-7);
}

TEST_CASE("bulk limit of the hard edge matches the bead kernel up to the (-1)^dt gauge") {
    for (double a : {50.0, 100.0})
        for (int dt : {0, 1, 2})
            for (double d : {0.3, -0.8}) {
                const double h = hard_kernel(1, a + d, 1 + dt, a);
                const double b = (dt % 2 ? -1.0 : 1.0) * bead_kernel(0, d, dt, 0);
                CHECK(std::abs(h - b) < 0.02 * std::max(std::abs(b), 0.05));
            }
}

TEST_CASE("soft edge scaling") {
    const double lim = airy_kernel(0, 0);
    double prev = 1.0;
    for (int n : {50, 100, 200}) {
        const double err = std::abs(scaled_kernel_soft(n, 0, 0, 0, 0) / lim - 1);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.05);
    CHECK(scaled_kernel_soft(200, 1, 0, 1, 0) == doctest::Approx(scaled_kernel_soft(200, 0, 0, 0, 0)).epsilon(0.1));
    // off-diagonal and across species (both orderings) tend to the Airy kernel
    CHECK(scaled_kernel_soft(200, 0, 0.5, 1, -0.3) == doctest::Approx(airy_kernel(0.5, -0.3)).epsilon(0.03));
    CHECK(scaled_kernel_soft(200, 1, 0.5, 0, -0.3) == doctest::Approx(airy_kernel(0.5, -0.3)).epsilon(0.03));
    // the two gauges agree on a common species
    const ScalingOptions asym{Centering::Midpoint, LimitGauge::Asymptotic};
    CHECK(scaled_kernel_soft(100, 2, 0.1, 2, 0.1, asym) == doctest::Approx(scaled_kernel_soft(100, 2, 0.1, 2, 0.1)).epsilon(1e-12));
    // literal centring converges, but visibly slower
    const ScalingOptions lit{Centering::Literal, LimitGauge::Exact};
    CHECK(std::abs(scaled_kernel_soft(200, 0, 0, 0, 0, lit) / lim - 1) > prev);
}

TEST_CASE("soft edge with O(n^{2/3}) species separation") {
    const double lim = ext_airy_kernel(0, 0, 0.5, 0);
    double prev = 1.0;
    for (int n : {50, 100, 200}) {
        const double err = std::abs(scaled_kernel_soft2(n, 0, 0, 0.5, 0) / lim - 1);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.1);
    // swapped order lands on the lower branch
    const double sw = scaled_kernel_soft2(200, 0.5, 0, 0, 0);
    CHECK(sw < 0);
    CHECK(sw == doctest::Approx(ext_airy_kernel(0.5, 0, 0, 0)).epsilon(0.1));
    const ScalingOptions asym{Centering::Midpoint, LimitGauge::Asymptotic};
    CHECK(scaled_kernel_soft2(200, 0, 0, 0.5, 0, asym) == doctest::Approx(lim).epsilon(0.1));
    CHECK_THROWS_AS(scaled_kernel_soft2(10, 0, 0, 3.0, 0), DomainError);
}

TEST_CASE("hard edge scaling") {
    CHECK(scaled_kernel_hard(100, 1, 0, 1, 0) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::abs(scaled_kernel_hard(100, 0, 0, 0, 0)) < 0.1);
    for (auto [cj, cl] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{0, 2}}) {
        const double lim = hard_kernel(cj, 0.3, cl, 0.7);
        CHECK(scaled_kernel_hard(200, cj, 0.3, cl, 0.7) == doctest::Approx(lim).epsilon(0.02));
    }
    // 2x2 determinant does not see the conjugation prefactor
    const double a = scaled_kernel_hard(100, 1, 0.2, 1, 0.2), b = scaled_kernel_hard(100, 1, 0.2, 3, 0.6);
    const double c = scaled_kernel_hard(100, 3, 0.6, 1, 0.2), d = scaled_kernel_hard(100, 3, 0.6, 3, 0.6);
    const double a2 = scaled_kernel_hard(100, 1, 0.2, 1, 0.2, 0, LimitGauge::Exact), b2 = scaled_kernel_hard(100, 1, 0.2, 3, 0.6, 0, LimitGauge::Exact);
    const double c2 = scaled_kernel_hard(100, 3, 0.6, 1, 0.2, 0, LimitGauge::Exact), d2 = scaled_kernel_hard(100, 3, 0.6, 3, 0.6, 0, LimitGauge::Exact);
    CHECK(a * d - b * c == doctest::Approx(a2 * d2 - b2 * c2).epsilon(1e-10));
}

TEST_CASE("convergence harness") {
    const auto rows = convergence(Regime::Soft, {50, 100, 200}, {0, 0}, {0, 0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].rel_error < rows[1].rel_error);
    CHECK(rows[1].rel_error < rows[0].rel_error);
    const auto hard = convergence(Regime::Hard, {50, 100}, {0, 0.0}, {0, 0.0});
    CHECK(hard[1].limit == doctest::Approx(0.0));
    CHECK_THROWS_AS(convergence(Regime::Soft, {50}, {0.5, 0}, {0, 0}), DomainError);
}
