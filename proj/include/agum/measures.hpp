/// @file measures.hpp
/// @brief Continuous limit densities: per-level aGUE eigenvalue law, joint minor-chain law,
///        cone volumes and normalisation constants.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace agum {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Interlaced chain lambda^(1) < ... < lambda^(n); levels[k-1] holds floor(k/2) decreasing
/// positive values. The phantom 0 at odd levels is never stored.
struct MinorChain {
    int n = 0;
    std::vector<std::vector<double>> levels;

    const std::vector<double>& level(int k) const { return levels.at(k - 1); }
    const std::vector<double>& top() const { return levels.back(); }
};

/// Z_n = prod_{j=1}^{n-2} j!!  (Z_1 = Z_2 = 1) and
/// W_n = int over lambda_1 > ... > lambda_m > 0 of Delta(lambda^2)^2 prod lambda^{2 eps} e^{-lambda^2}
///     = w_rational * pi^{m/2}, m = floor(n/2), eps = n mod 2.
struct NormConstants {
    BigInt Z;
    BigRational w_rational;
    int pi_half_power = 0;
    double W = 0.0;
    double log_W = 0.0;
};

NormConstants norm_constants(int n);

/// prod_{l=1}^{floor(n/2)} N_{n-2l}: the normaliser in its commonly quoted form; kept only to pin that it is wrong.
double naive_W(int n);

/// Normalised density of the positive spectrum of an n x n aGUE matrix.
double ague_marginal_pdf(int n, const std::vector<double>& lam);
double log_ague_marginal_pdf(int n, const std::vector<double>& lam);

/// P(largest positive eigenvalue <= x) for an n x n aGUE matrix (n >= 2).
double ague_top_cdf(int n, double x);

/// Joint density of the whole chain (indicator determinants form).
double agum_joint_pdf(const MinorChain& chain);

/// Volume of the set of interlaced chains below `top` (level n).
double cone_volume(const std::vector<double>& top, int n);

/// lower (level k) interlaces upper (level k+1), phantom 0 below every odd level.
bool interlaces(const std::vector<double>& lower, int k, const std::vector<double>& upper);
bool chain_interlaced(const MinorChain& chain);

/// Throws DomainError unless sizes, positivity and strict ordering within levels hold.
void validate_chain(const MinorChain& chain);

/// Z_n as a BigInt.
BigInt cone_constant(int n);

}  // namespace agum
