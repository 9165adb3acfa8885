/// @file halfhex.hpp
/// @brief Discrete half-hexagon model: p non-intersecting +-1 walks of length 2N above a wall,
///        started and ended at heights 0, 2, ..., 2p-2. Exact counts, line measures, cone
///        cardinalities, a perfect sampler and the brute-force enumerator.
///
/// Coordinates: on line n particles sit at heights e = n (mod 2). Red particles are walker
/// positions, blue particles the holes of the parity lattice {e = n mod 2, 0 <= e <= 2p+n'-2},
/// n' = min(n, 2N-n). The interlacing (x) frame used by cone_card is x = e + 1.
#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "agum/measures.hpp"
#include "agum/rng.hpp"

namespace agum {

struct PathEnsemble {
    int p = 0;
    int N = 0;
    std::vector<std::vector<int>> heights;  // heights[i][t], walker i (bottom first), t = 0..2N
};

enum class ParticleKind { Red, Blue };

/// +-1 walks a -> b in m steps that never go below 0 (reflection principle).
BigInt walk_count_wall(int m, int a, int b);

/// Number of p-branch stars from (0, 2i-2) to (m, e_i) above the wall (product formula).
BigInt count_stars(int p, int m, const std::vector<int>& e);

/// Same count by the Lindstrom-Gessel-Viennot determinant of walk_count_wall entries.
BigInt count_stars_lgv(int p, int m, const std::vector<int>& e);

/// Endpoint set -> number of stars, by dynamic programming over height vectors.
std::map<std::vector<int>, BigInt> star_counts_dp(int p, int m);

/// Total number of ensembles (= tilings).
BigInt count_ensembles(int p, int N);

/// Parity lattice of line n: {e = n mod 2, 0 <= e <= 2p + min(n, 2N-n) - 2}.
std::vector<int> line_lattice(int p, int N, int n);
int blue_count(int N, int n);

BigRational red_measure(int p, int N, int n, const std::vector<int>& e);
BigRational blue_measure(int p, int N, int n, const std::vector<int>& e);

/// Unnormalised blue weight (rational, constant factors dropped).
BigRational blue_weight(int p, int N, int n, const std::vector<int>& e);

/// Complement of a configuration in the line lattice.
std::vector<int> complement_on_line(int p, int N, int n, const std::vector<int>& e);

/// Full law of one line, with exact integer weights, for enumeration and exact sampling.
struct LineLaw {
    int p = 0, N = 0, n = 0;
    ParticleKind kind = ParticleKind::Blue;
    std::vector<std::vector<int>> configs;
    std::vector<BigInt> weights;
    BigInt total;

    BigRational probability(std::size_t i) const { return BigRational(weights[i], total); }
    /// Exact draw (uniform big integer below `total`).
    std::size_t sample_index(Rng& rng) const;
};

/// Throws SizeError if the support exceeds max_configs.
LineLaw line_law(int p, int N, int n, ParticleKind kind, std::size_t max_configs = 5'000'000);

/// Cardinality of the discrete cone below top (x-coordinates, level n).
BigInt cone_card(const std::vector<int>& top, int n);

/// Brute-force count of interlaced chains below top (oracle for cone_card).
BigInt cone_card_bruteforce(const std::vector<int>& top, int n);

/// Blue x-coordinates (decreasing) on line k of an ensemble.
std::vector<int> blue_positions_x(const PathEnsemble& ens, int k);

/// Every ensemble, depth first. p <= 3, N <= 4.
std::vector<PathEnsemble> enumerate_all(int p, int N);

/// Perfect uniform sample, built step by step from LGV completion counts.
PathEnsemble sample_ensemble(int p, int N, Rng& rng);

/// Validates the PathEnsemble invariants; throws DomainError.
void validate_ensemble(const PathEnsemble& ens);

/// Export: header line `p,N,seed`, one value line, then one line of heights per walker.
void write_ensemble(std::ostream& os, const PathEnsemble& ens, std::uint64_t seed);

/// Uniform big integer in [0, bound).
BigInt uniform_below(const BigInt& bound, Rng& rng);

}  // namespace agum
