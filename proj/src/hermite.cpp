#include "agum/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "agum/errors.hpp"

namespace agum {

namespace {

constexpr int kBinaryStep = 500;          // rescale by 2^-500 when a mantissa exceeds 2^500
constexpr double kBig = 3.273390607896142e150;  // 2^500
constexpr double kLn2 = std::numbers::ln2;

}  // namespace

double WeightedValue::value() const {
    if (mantissa == 0.0) return 0.0;
    return mantissa * std::exp(log_scale);
}

double WeightedValue::log_abs() const {
    if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mantissa)) + log_scale;
}

void WeightedValue::normalize() {
    if (mantissa == 0.0 || !std::isfinite(mantissa)) {
        if (mantissa == 0.0) log_scale = 0.0;
        return;
    }
    int e = 0;
    mantissa = std::frexp(mantissa, &e);
    log_scale += e * kLn2;
}

WeightedValue& WeightedValue::operator*=(const WeightedValue& o) {
    mantissa *= o.mantissa;
    log_scale += o.log_scale;
    normalize();
    return *this;
}

WeightedValue& WeightedValue::operator*=(double f) {
    mantissa *= f;
    normalize();
    return *this;
}

WeightedValue operator*(WeightedValue a, const WeightedValue& b) {
    a *= b;
    return a;
}

WeightedValue operator+(const WeightedValue& a, const WeightedValue& b) {
    if (a.mantissa == 0.0) return b;
    if (b.mantissa == 0.0) return a;
    const double L = std::max(a.log_scale, b.log_scale);
    WeightedValue r{a.mantissa * std::exp(a.log_scale - L) + b.mantissa * std::exp(b.log_scale - L), L};
    r.normalize();
    return r;
}

WeightedValue weighted_sum(const std::vector<WeightedValue>& terms) {
    double L = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.mantissa != 0.0) L = std::max(L, t.log_abs());
    if (!std::isfinite(L)) return {};
    double acc = 0.0;
    for (const auto& t : terms)
        if (t.mantissa != 0.0) acc += t.mantissa * std::exp(t.log_scale - L);
    WeightedValue r{acc, L};
    r.normalize();
    return r;
}

double log_factorial(int k) {
    if (k < 0) throw DomainError("log_factorial: negative argument");
    static const std::array<double, 4096> table = [] {
        std::array<double, 4096> t{};
        t[0] = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    if (k < static_cast<int>(table.size())) return table[k];
    const double n = k + 1.0;  // Stirling for log Gamma(n)
    return (n - 0.5) * std::log(n) - n + 0.5 * std::log(2.0 * std::numbers::pi) + 1.0 / (12.0 * n) -
           1.0 / (360.0 * n * n * n);
}

double hermite_log_norm(int j) {
    if (j < 0) throw DomainError("hermite_norm: negative index");
    return 0.5 * std::log(std::numbers::pi) + (j - 1) * kLn2 + log_factorial(j);
}

double hermite_norm(int j) { return std::exp(hermite_log_norm(j)); }

WeightedValue hermite_eval(int j, double x, bool weighted) {
    if (j < 0) throw DomainError("hermite_eval: negative degree");
    if (!std::isfinite(x)) throw DomainError("hermite_eval: non-finite x");
    double prev = 1.0, cur = 2.0 * x;
    long exponent = 0;  // in units of 2^kBinaryStep
    if (j == 0) {
        cur = 1.0;
    } else {
        for (int k = 1; k < j; ++k) {
            const double next = 2.0 * x * cur - 2.0 * k * prev;
            prev = cur;
            cur = next;
            if (std::abs(cur) > kBig) {
                cur = std::ldexp(cur, -kBinaryStep);
                prev = std::ldexp(prev, -kBinaryStep);
                ++exponent;
            }
        }
    }
    WeightedValue r{cur, exponent * kBinaryStep * kLn2 - (weighted ? 0.5 * x * x : 0.0)};
    r.normalize();
    return r;
}

std::vector<WeightedValue> hermite_function_row(int jmax, double x) {
    if (jmax < 0) return {};
    if (!std::isfinite(x)) throw DomainError("hermite_function_row: non-finite x");
    std::vector<WeightedValue> out(jmax + 1);
    const double base = -0.5 * x * x;
    double prev = 0.0, cur = std::exp(-hermite_log_gamma(0));
    long exponent = 0;
    out[0] = {cur, base};
    for (int j = 0; j < jmax; ++j) {
        const double next = x * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kBig) {
            cur = std::ldexp(cur, -kBinaryStep);
            prev = std::ldexp(prev, -kBinaryStep);
            ++exponent;
        }
        out[j + 1] = {cur, base + exponent * kBinaryStep * kLn2};
    }
    for (auto& v : out) v.normalize();
    return out;
}

}  // namespace agum
