/// @file specfun.hpp
/// @brief Hermite polynomials (physicists' convention), Airy Ai, repeated erfc
///        integrals and adaptive Gauss-Kronrod quadrature.
#pragma once

#include <functional>
#include <vector>

namespace agum {

/// value = mantissa * exp(log_scale). Keeps H_j(x) representable for j in the thousands.
struct WeightedValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    double value() const;
    double log_abs() const;  // -inf for zero
    int sign() const { return (mantissa > 0) - (mantissa < 0); }

    WeightedValue& operator*=(const WeightedValue& o);
    WeightedValue& operator*=(double f);
    WeightedValue scaled(double log_factor) const { return {mantissa, log_scale + log_factor}; }
    void normalize();
};

WeightedValue operator*(WeightedValue a, const WeightedValue& b);
WeightedValue operator+(const WeightedValue& a, const WeightedValue& b);

/// Exact sum of many WeightedValues (aligned on the largest scale).
WeightedValue weighted_sum(const std::vector<WeightedValue>& terms);

// ---- Hermite -------------------------------------------------------------

/// H_j(x), H_0 = 1, H_1 = 2x. With `weighted`, returns e^{-x^2/2} H_j(x).
WeightedValue hermite_eval(int j, double x, bool weighted = false);

/// log N_j, N_j = sqrt(pi) 2^{j-1} j! = int_0^inf H_j^2 e^{-x^2} dx.
double hermite_log_norm(int j);
inline double hermite_log_gamma(int j) { return 0.5 * hermite_log_norm(j); }
double hermite_norm(int j);

/// eta_0..eta_jmax at x, eta_j = e^{-x^2/2} H_j(x) / gamma_j (orthonormal on the half line
/// within a parity class).
std::vector<WeightedValue> hermite_function_row(int jmax, double x);

/// log k! for k >= 0 (table below 4096, Stirling beyond). Thread-safe.
double log_factorial(int k);

// ---- Airy ----------------------------------------------------------------

double airy_ai(double x);
double airy_ai_prime(double x);
/// Both at once (cheaper for kernels).
void airy_ai_both(double x, double& ai, double& aip);

// ---- repeated erfc integrals ---------------------------------------------

/// i^n erfc(x) with i^0 erfc = erfc, i^n erfc(x) = int_x^inf i^{n-1}erfc(t) dt.
double ierfc(int n, double x);
/// e^{x^2} i^n erfc(x); stays finite for large positive x.
double ierfc_scaled(int n, double x);
/// e^{x^2} erfc(x).
double erfcx(double x);

// ---- quadrature ----------------------------------------------------------

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_panels = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15 Gauss-Kronrod on [a, b]. Throws AccuracyError on failure.
QuadResult quad_interval(const Integrand& f, double a, double b, const QuadOptions& opt = {});

/// int_a^inf f(u) du via u = a - scale*log(1-v), v in [0,1).
QuadResult quad_semiinf(const Integrand& f, double a, const QuadOptions& opt = {}, double scale = 1.0);
inline QuadResult quad_semiinf(const Integrand& f, double a, double tol) {
    return quad_semiinf(f, a, QuadOptions{tol, tol, 4000});
}

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the three-term recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace agum

namespace agum {
/// e^{x^2} i^n erfc(x) in scaled form (large n / large x safe).
WeightedValue ierfc_scaled_weighted(int n, double x);
}  // namespace agum
