#include "agum/measures.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "agum/errors.hpp"
#include "agum/specfun.hpp"

namespace agum {

namespace {

void check_decreasing_positive(const std::vector<double>& v, const char* who) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || !(v[i] > 0)) throw DomainError(std::string(who) + ": entries must be positive");
        if (i > 0 && !(v[i] < v[i - 1])) throw DomainError(std::string(who) + ": entries must be strictly decreasing");
    }
}

BigInt double_factorial(int j) {
    BigInt r = 1;
    for (int k = j; k > 1; k -= 2) r *= k;
    return r;
}

// (2k-1)!! / 2^{k+1}: the rational part of int_0^inf lambda^{2k} e^{-lambda^2} = that * sqrt(pi)
BigRational moment_rational(int k) {
    return BigRational(double_factorial(2 * k - 1), BigInt(1) << (k + 1));
}

BigRational rational_det(std::vector<std::vector<BigRational>> a) {
    const std::size_t m = a.size();
    BigRational det = 1;
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < m; ++r) {
            if (a[r][c] == 0) continue;
            const BigRational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < m; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

double log_of(const BigRational& r) {
    using boost::multiprecision::cpp_bin_float_50;
    const cpp_bin_float_50 v = cpp_bin_float_50(boost::multiprecision::numerator(r)) /
                               cpp_bin_float_50(boost::multiprecision::denominator(r));
    return static_cast<double>(boost::multiprecision::log(v));
}

}  // namespace

BigInt cone_constant(int n) {
    if (n < 1) throw DomainError("cone_constant: n must be >= 1");
    BigInt z = 1;
    for (int j = 1; j <= n - 2; ++j) z *= double_factorial(j);
    return z;
}

NormConstants norm_constants(int n) {
    if (n < 1) throw DomainError("norm_constants: n must be >= 1");
    const int m = n / 2, eps = n % 2;
    NormConstants c;
    c.Z = cone_constant(n);
    std::vector<std::vector<BigRational>> h(m, std::vector<BigRational>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) h[i][j] = moment_rational(i + j + eps);
    c.w_rational = m == 0 ? BigRational(1) : rational_det(h);
    c.pi_half_power = m;
    c.log_W = log_of(c.w_rational) + 0.5 * m * std::log(std::numbers::pi);
    c.W = std::exp(c.log_W);
    return c;
}

double naive_W(int n) {
    double w = 1.0;
    for (int l = 1; l <= n / 2; ++l) w *= hermite_norm(n - 2 * l);
    return w;
}

double log_ague_marginal_pdf(int n, const std::vector<double>& lam) {
    if (n < 2) throw DomainError("ague_marginal_pdf: n must be >= 2");
    if (static_cast<int>(lam.size()) != n / 2) throw DomainError("ague_marginal_pdf: need floor(n/2) values");
    check_decreasing_positive(lam, "ague_marginal_pdf");
    double lg = -norm_constants(n).log_W;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        lg -= lam[i] * lam[i];
        if (n % 2) lg += 2.0 * std::log(lam[i]);
        for (std::size_t j = i + 1; j < lam.size(); ++j) lg += 2.0 * std::log(lam[i] * lam[i] - lam[j] * lam[j]);
    }
    return lg;
}

double ague_marginal_pdf(int n, const std::vector<double>& lam) { return std::exp(log_ague_marginal_pdf(n, lam)); }

double ague_top_cdf(int n, double x) {
    if (n < 2) throw DomainError("ague_top_cdf: n must be >= 2");
    if (!(x > 0)) return 0.0;
    const int m = n / 2, eps = n % 2;
    // Andreief with every variable restricted to (0, x): det[ int_0^x lambda^{2(i+j+eps)} e^{-lambda^2} ]
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double k = i + j + eps + 0.5;
            a(i, j) = 0.5 * boost::math::tgamma_lower(k, x * x);
        }
    const double v = a.determinant() / norm_constants(n).W;
    return std::min(1.0, std::max(0.0, v));
}

bool interlaces(const std::vector<double>& lower, int k, const std::vector<double>& upper) {
    // upper_1 > lower_1 > upper_2 > lower_2 > ... with a phantom 0 appended to lower at odd k
    std::vector<double> lo = lower;
    if (k % 2 == 1) lo.push_back(0.0);
    if (lo.size() != upper.size()) return false;
    for (std::size_t i = 0; i < upper.size(); ++i) {
        if (!(lo[i] < upper[i])) return false;
        if (i + 1 < upper.size() && !(lo[i] > upper[i + 1])) return false;
    }
    return true;
}

void validate_chain(const MinorChain& chain) {
    if (chain.n < 1 || static_cast<int>(chain.levels.size()) != chain.n)
        throw DomainError("minor chain: need exactly n levels");
    for (int k = 1; k <= chain.n; ++k) {
        if (static_cast<int>(chain.level(k).size()) != k / 2) throw DomainError("minor chain: level k needs floor(k/2) values");
        check_decreasing_positive(chain.level(k), "minor chain");
    }
}

bool chain_interlaced(const MinorChain& chain) {
    for (int k = 1; k < chain.n; ++k)
        if (!interlaces(chain.level(k), k, chain.level(k + 1))) return false;
    return true;
}

double agum_joint_pdf(const MinorChain& chain) {
    validate_chain(chain);
    const int n = chain.n;
    if (n < 2) throw DomainError("agum_joint_pdf: n must be >= 2");
    // prod_k det[1{lambda^(k)_i < lambda^(k+1)_j}], lower level padded with the phantom at odd k
    for (int k = 1; k < n; ++k) {
        std::vector<double> lo = chain.level(k);
        if (k % 2 == 1) lo.push_back(0.0);
        const auto& up = chain.level(k + 1);
        const auto sz = static_cast<Eigen::Index>(up.size());
        if (sz == 0) continue;
        Eigen::MatrixXd ind(sz, sz);
        for (Eigen::Index i = 0; i < sz; ++i)
            for (Eigen::Index j = 0; j < sz; ++j) ind(i, j) = lo[i] < up[j] ? 1.0 : 0.0;
        const double d = std::round(ind.partialPivLu().determinant());
        if (d == 0.0) return 0.0;
        if (d != 1.0) throw ConsistencyError("agum_joint_pdf: indicator determinant outside {0,1}");
    }
    const auto& top = chain.top();
    const auto nc = norm_constants(n);
    double lg = log_of(BigRational(nc.Z)) - nc.log_W;
    for (std::size_t i = 0; i < top.size(); ++i) {
        lg -= top[i] * top[i];
        if (n % 2) lg += std::log(top[i]);
        for (std::size_t j = i + 1; j < top.size(); ++j) lg += std::log(top[i] * top[i] - top[j] * top[j]);
    }
    return std::exp(lg);
}

double cone_volume(const std::vector<double>& top, int n) {
    if (n < 1) throw DomainError("cone_volume: n must be >= 1");
    if (static_cast<int>(top.size()) != n / 2) throw DomainError("cone_volume: need floor(n/2) values");
    check_decreasing_positive(top, "cone_volume");
    double lg = -log_of(BigRational(cone_constant(n)));
    for (std::size_t i = 0; i < top.size(); ++i) {
        if (n % 2) lg += std::log(top[i]);
        for (std::size_t j = i + 1; j < top.size(); ++j) lg += std::log(top[i] * top[i] - top[j] * top[j]);
    }
    return std::exp(lg);
}

}  // namespace agum
