/// @file limits.hpp
/// @brief Limiting kernels (Airy, extended Airy, bead, hard edge) and the finite-n scaled
///        kernels that converge to them.
#pragma once

#include <vector>

namespace agum {

/// int_0^inf Ai(x+u) Ai(y+u) du, x, y >= -10.
double airy_kernel(double x, double y);

/// Extended Airy kernel. tau_y >= tau_x: int_0^inf e^{-(tau_y-tau_x)u} Ai(x+u)Ai(y+u) du;
/// tau_y < tau_x: -int_{-inf}^0 of the same integrand (absolutely convergent, needs |tau_y-tau_x| >= 0.05).
double ext_airy_kernel(double tx, double x, double ty, double y);

/// Isotropic bead kernel; tau_y - tau_x must be an integer.
double bead_kernel(double tx, double x, double ty, double y);

/// int_1^inf u^{-m} e^{-eps u} cos(omega u + phase) du; the undamped m = 1 case is the improper
/// (conditionally convergent) integral, evaluated exactly via the integration-by-parts tail.
double oscillatory_tail(int m, double omega, double phase, double eps = 0.0);

/// Hard edge kernel with integer labels s, t (phase pi(1-s)/2).
double hard_kernel(int s, double x, int t, double y);
/// Same, with the t < s branch damped by e^{-eps u}; tends to hard_kernel as eps -> 0.
double hard_kernel_damped(int s, double x, int t, double y, double eps);

/// Soft edge centring: Midpoint uses sqrt(2s-1) (turning point of the middle index of the
/// Riemann sum), Literal uses sqrt(4n) (soft) or sqrt(2s) (soft2).
enum class Centering { Midpoint, Literal };
/// Exact: conjugate by the Hermite norm ratio; Asymptotic: by its large-n form.
enum class LimitGauge { Exact, Asymptotic };

struct ScalingOptions {
    Centering centering = Centering::Midpoint;
    LimitGauge gauge = LimitGauge::Exact;
};

/// Species s_i = 2n+1-c_i, y_i = centre + Y_i/(sqrt2 (2n)^{1/6}); tends to airy_kernel(Yj, Yl).
double scaled_kernel_soft(int n, int cj, double Yj, int cl, double Yl, const ScalingOptions& opt = {});

/// Species s_i = round(2n - 2c_i(2n)^{2/3}); tends to ext_airy_kernel(cj, Yj, cl, Yl).
double scaled_kernel_soft2(int n, double cj, double Yj, double cl, double Yl, const ScalingOptions& opt = {});

/// Species s_i = 2n+1-c_i, y_i = pi Y_i/(2 sqrt n) + offset; tends to hard_kernel(cj, Yj, cl, Yl).
double scaled_kernel_hard(int n, int cj, double Yj, int cl, double Yl, double offset = 0.0,
                          LimitGauge gauge = LimitGauge::Asymptotic);

enum class Regime { Soft, Soft2, Hard };

struct ScaledPoint {
    double c = 0.0;
    double Y = 0.0;
};

struct ConvergenceRow {
    int n = 0;
    double value = 0.0;
    double limit = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;  // abs_error / |limit|, or abs_error when the limit vanishes
};

double limit_value(Regime regime, ScaledPoint a, ScaledPoint b);
double scaled_value(Regime regime, int n, ScaledPoint a, ScaledPoint b, const ScalingOptions& opt = {});
std::vector<ConvergenceRow> convergence(Regime regime, const std::vector<int>& ns, ScaledPoint a, ScaledPoint b,
                                        const ScalingOptions& opt = {});

}  // namespace agum
