/// @file matrix_sampler.hpp
/// @brief Two samplers of the aGUE minor chain: dense antisymmetric Gaussian matrices and
///        the matrix-free bordering recursion driven by random rational functions.
#pragma once

#include <optional>
#include <vector>

#include "agum/measures.hpp"
#include "agum/rng.hpp"

namespace agum {

/// p(lambda) = lambda - sum_i lambda q_i / (lambda^2 - a_i^2)  [ - q0 / lambda ]
struct RationalSpec {
    std::vector<double> a;  // strictly increasing, positive
    std::vector<double> q;  // positive, same length as a
    std::optional<double> q0;
};

/// Positive zeros of p, increasing: n of them (a_1 < b_1 < ... < a_n < b_n), or n+1 with q0.
std::vector<double> roots_of_rational(const RationalSpec& spec);

/// Real antisymmetric part A (H = iA): upper entries N(0, 1/2).
std::vector<std::vector<double>> sample_antisymmetric(int n, Rng& rng);

/// Positive eigenvalues of iA for the k x k leading minor of A, decreasing.
std::vector<double> positive_spectrum(const std::vector<std::vector<double>>& A, int k);

MinorChain sample_minor_chain_matrix(int n, Rng& rng);

/// One bordering step record (for identity checks).
struct BorderStep {
    std::vector<double> a;  // increasing, level k
    std::vector<double> q;
    std::optional<double> q0;
    std::vector<double> b;  // increasing, level k+1
};

MinorChain sample_minor_chain_bordered(int n, Rng& rng, std::vector<BorderStep>* trace = nullptr);

}  // namespace agum
