#include "agum/matrix_sampler.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "agum/errors.hpp"

namespace agum {

namespace {

constexpr double kZeroClamp = 1e-12;

// Pole-cleared form P(lambda) = p(lambda) * lambda^eps * prod_i (lambda^2 - a_i^2).
// Nonzero with known sign at every a_i, so bisection never touches a pole.
double cleared(const RationalSpec& s, double lam) {
    const std::size_t n = s.a.size();
    const bool odd = s.q0.has_value();
    double prod_all = 1.0;
    for (double ai : s.a) prod_all *= lam * lam - ai * ai;
    double v = lam * prod_all;
    for (std::size_t i = 0; i < n; ++i) {
        double others = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) others *= lam * lam - s.a[j] * s.a[j];
        v -= lam * s.q[i] * others;
    }
    if (odd) v = v * lam - *s.q0 * prod_all;
    return v;
}

double find_root(const RationalSpec& s, double lo, double hi) {
    double flo = cleared(s, lo), fhi = cleared(s, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw NumericError("roots_of_rational: no sign change in bracket");
    for (int it = 0; it < 400; ++it) {
        // secant proposal, fall back to bisection when it leaves the middle of the bracket
        double mid = 0.5 * (lo + hi);
        const double sec = hi - fhi * (hi - lo) / (fhi - flo);
        if (it > 4 && sec > lo + 0.05 * (hi - lo) && sec < hi - 0.05 * (hi - lo)) mid = sec;
        const double fm = cleared(s, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
        if (hi - lo <= 1e-15 * hi) return 0.5 * (lo + hi);
    }
    throw NumericError("roots_of_rational: no convergence");
}

}  // namespace

std::vector<double> roots_of_rational(const RationalSpec& s) {
    const std::size_t n = s.a.size();
    if (s.q.size() != n) throw DomainError("roots_of_rational: a and q sizes differ");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s.a[i] > 0) || (i > 0 && !(s.a[i] > s.a[i - 1])))
            throw DomainError("roots_of_rational: a must be positive and strictly increasing");
        if (!(s.q[i] >= 0)) throw DomainError("roots_of_rational: q must be nonnegative");
    }
    if (s.q0 && !(*s.q0 > 0)) throw DomainError("roots_of_rational: q0 must be positive");
    double bound2 = std::accumulate(s.q.begin(), s.q.end(), 0.0) + s.q0.value_or(0.0);
    if (n > 0) bound2 += s.a.back() * s.a.back();
    const double upper = std::sqrt(bound2) * (1 + 1e-12) + 1e-300;
    std::vector<double> b;
    std::vector<double> edges;
    if (s.q0) edges.push_back(0.0);
    edges.insert(edges.end(), s.a.begin(), s.a.end());
    edges.push_back(upper);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        if (hi <= lo) {  // degenerate (zero weights): the root sits on the pole
            b.push_back(lo);
            continue;
        }
        // a zero weight leaves the root exactly on a_i (where the cleared form vanishes too)
        if (i > 0 || !s.q0) {
            const std::size_t ai = s.q0 ? i - 1 : i;
            if (ai < n && s.q[ai] == 0.0) {
                b.push_back(lo);
                continue;
            }
        }
        // nudge open endpoints so the cleared form is evaluated strictly inside
        const double l = lo == 0.0 ? std::min(hi * 1e-300, hi) : lo;
        b.push_back(find_root(s, l, hi));
    }
    return b;
}

std::vector<std::vector<double>> sample_antisymmetric(int n, Rng& rng) {
    if (n < 1) throw DomainError("sample_antisymmetric: n must be >= 1");
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    const double sd = std::sqrt(0.5);
    // column by column so that each leading minor uses the same draws for any n
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            A[i][j] = rng.normal(sd);
            A[j][i] = -A[i][j];
        }
    return A;
}

std::vector<double> positive_spectrum(const std::vector<std::vector<double>>& A, int k) {
    if (k < 2) return {};
    // iA has eigenvalues +-lambda; the real symmetric embedding [[0, -A], [A, 0]] has each twice
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            E(i, k + j) = -A[i][j];
            E(k + i, j) = A[i][j];
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(E, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("positive_spectrum: eigensolver failed");
    const auto& ev = es.eigenvalues();  // increasing
    std::vector<double> out;
    // the top 2*floor(k/2) eigenvalues come in equal pairs
    for (int i = 0; i < k / 2; ++i) {
        const double v = 0.5 * (ev(2 * k - 1 - 2 * i) + ev(2 * k - 2 - 2 * i));
        out.push_back(v < kZeroClamp ? 0.0 : v);
    }
    return out;
}

MinorChain sample_minor_chain_matrix(int n, Rng& rng) {
    if (n < 1) throw DomainError("sample_minor_chain_matrix: n must be >= 1");
    const auto A = sample_antisymmetric(n, rng);
    MinorChain c;
    c.n = n;
    c.levels.resize(n);
    for (int k = 1; k <= n; ++k) c.levels[k - 1] = positive_spectrum(A, k);
    return c;
}

MinorChain sample_minor_chain_bordered(int n, Rng& rng, std::vector<BorderStep>* trace) {
    if (n < 1) throw DomainError("sample_minor_chain_bordered: n must be >= 1");
    MinorChain c;
    c.n = n;
    c.levels.resize(n);
    std::vector<double> a;  // increasing
    const double sd = std::sqrt(0.5);
    for (int k = 1; k < n; ++k) {
        RationalSpec spec;
        spec.a = a;
        spec.q.resize(a.size());
        for (auto& q : spec.q) q = rng.exponential();
        if (k % 2 == 1) {
            const double g = rng.normal(sd);
            spec.q0 = g * g;
        }
        auto b = roots_of_rational(spec);
        if (trace) trace->push_back({spec.a, spec.q, spec.q0, b});
        c.levels[k] = std::vector<double>(b.rbegin(), b.rend());
        a = std::move(b);
    }
    return c;
}

}  // namespace agum
