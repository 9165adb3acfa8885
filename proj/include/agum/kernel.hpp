/// @file kernel.hpp
/// @brief Finite-n correlation kernel of the anti-symmetric GUE minor process.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "agum/specfun.hpp"

namespace agum {

/// Plain: prefactor e^{-x^2}.  Symmetric: e^{-(x^2+y^2)/2}, i.e. e^{x^2/2} K_plain e^{-y^2/2}.
enum class Gauge { Plain, Symmetric };

/// Particle of species (minor level) s >= 1 at coordinate x >= 0.
struct LevelPoint {
    int s = 1;
    double x = 0.0;
};

/// chi_{x<y} (y-x)^{j-i-1} / (j-i-1)! for i < j, else 0.
double transfer_w(int i, int j, double x, double y);

/// e^{-x^2} H_j(x) for j >= 0; (1/(-j-1)!) int_x^inf (y-x)^{-j-1} e^{-y^2} dy for j < 0.
/// The level p does not enter the value.
double psi(int p, int j, double x);

/// H_j(y) / N_j.
double phi(int t, int j, double y);

/// K((s,x),(t,y)) in the requested gauge, in scaled arithmetic.
WeightedValue kernel_weighted(int s, double x, int t, double y, Gauge gauge = Gauge::Plain);

inline double kernel_eval(int s, double x, int t, double y, Gauge gauge = Gauge::Plain) {
    return kernel_weighted(s, x, t, y, gauge).value();
}

/// e^{x^2} K_plain((s,x),(t,y)) for s >= t: a polynomial in y, valid for any real y.
double kernel_polynomial_part(int s, double x, int t, double y);

/// r x r kernel matrix [K(p_i, p_j)].
Eigen::MatrixXd kernel_matrix(const std::vector<LevelPoint>& points, Gauge gauge = Gauge::Symmetric);

/// det[K(p_i, p_j)] (r-point correlation function). r <= 64.
double corr_det(const std::vector<LevelPoint>& points, Gauge gauge = Gauge::Symmetric);

}  // namespace agum
