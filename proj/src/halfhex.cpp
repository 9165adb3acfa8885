#include "agum/halfhex.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <string>

#include "agum/errors.hpp"

namespace agum {

namespace {

BigInt factorial(int k) {
    BigInt r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[r], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

void check_pN(int p, int N) {
    if (p < 1 || N < 1) throw DomainError("half hexagon: p and N must be >= 1");
}

void check_line(int N, int n) {
    if (n < 0 || n > 2 * N) throw DomainError("half hexagon: line must lie in [0, 2N]");
}

// Valid configuration for a given lattice: strictly increasing members of the lattice of the right size.
bool on_lattice(const std::vector<int>& e, const std::vector<int>& lattice, std::size_t size) {
    if (e.size() != size) return false;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i > 0 && e[i] <= e[i - 1]) return false;
        if (!std::binary_search(lattice.begin(), lattice.end(), e[i])) return false;
    }
    return true;
}

void for_each_subset(int universe, int size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    if (size > universe) return;
    while (true) {
        fn(idx);
        int i = size - 1;
        while (i >= 0 && idx[i] == universe - size + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<int> starts(int p) {
    std::vector<int> s(p);
    for (int i = 0; i < p; ++i) s[i] = 2 * i;
    return s;
}

}  // namespace

BigInt walk_count_wall(int m, int a, int b) {
    if (m < 0 || a < 0 || b < 0) return 0;
    if ((m + b - a) % 2 != 0) return 0;
    return binomial(m, (m + b - a) / 2) - binomial(m, (m + a + b) / 2 + 1);
}

BigInt count_stars(int p, int m, const std::vector<int>& e) {
    if (p < 1 || m < 0) throw DomainError("count_stars: need p >= 1, m >= 0");
    if (static_cast<int>(e.size()) != p) throw DomainError("count_stars: need p endpoints");
    for (int i = 0; i < p; ++i) {
        if (e[i] < 0 || ((e[i] - m) % 2 != 0)) throw DomainError("count_stars: endpoint parity must match m");
        if (i > 0 && e[i] <= e[i - 1]) throw DomainError("count_stars: endpoints must increase strictly");
    }
    BigRational v = 1;
    for (int i = 1; i <= p; ++i) {
        const int ei = e[i - 1];
        const int f1 = (m + ei) / 2 + p, f2 = (m - ei) / 2 + p - 1;
        if (f1 < 0 || f2 < 0) return 0;  // unreachable endpoint
        v *= BigRational(BigInt(ei + 1) * factorial(m + 2 * i - 2), factorial(f1) * factorial(f2));
    }
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            const BigInt di = BigInt(e[i] + 1) * (e[i] + 1), dj = BigInt(e[j] + 1) * (e[j] + 1);
            v *= BigRational(di - dj, 4);
        }
    if (v < 0) v = -v;
    if (boost::multiprecision::denominator(v) != 1) throw ConsistencyError("count_stars: non-integer count");
    return boost::multiprecision::numerator(v);
}

BigInt count_stars_lgv(int p, int m, const std::vector<int>& e) {
    if (static_cast<int>(e.size()) != p) throw DomainError("count_stars_lgv: need p endpoints");
    std::vector<std::vector<BigInt>> a(p, std::vector<BigInt>(p));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) a[i][j] = walk_count_wall(m, 2 * i, e[j]);
    return bareiss_det(a);
}

std::map<std::vector<int>, BigInt> star_counts_dp(int p, int m) {
    if (p < 1 || m < 0) throw DomainError("star_counts_dp: need p >= 1, m >= 0");
    if (p > 6) throw SizeError("star_counts_dp: p > 6");
    std::map<std::vector<int>, BigInt> cur{{starts(p), BigInt(1)}};
    for (int step = 0; step < m; ++step) {
        std::map<std::vector<int>, BigInt> next;
        for (const auto& [h, c] : cur)
            for (int mask = 0; mask < (1 << p); ++mask) {
                std::vector<int> g(p);
                bool ok = true;
                for (int i = 0; i < p && ok; ++i) {
                    g[i] = h[i] + ((mask >> i) & 1 ? 1 : -1);
                    ok = g[i] >= 0 && (i == 0 || g[i] > g[i - 1]);
                }
                if (ok) next[g] += c;
            }
        cur = std::move(next);
    }
    return cur;
}

BigInt count_ensembles(int p, int N) {
    check_pN(p, N);
    return count_stars(p, 2 * N, starts(p));
}

int blue_count(int N, int n) { return std::min(n, 2 * N - n) / 2; }

std::vector<int> line_lattice(int p, int N, int n) {
    check_pN(p, N);
    check_line(N, n);
    const int reach = 2 * p + std::min(n, 2 * N - n) - 2;
    std::vector<int> l;
    for (int e = n % 2; e <= reach; e += 2) l.push_back(e);
    return l;
}

std::vector<int> complement_on_line(int p, int N, int n, const std::vector<int>& e) {
    std::vector<int> out;
    for (int v : line_lattice(p, N, n))
        if (!std::binary_search(e.begin(), e.end(), v)) out.push_back(v);
    return out;
}

BigRational red_measure(int p, int N, int n, const std::vector<int>& e) {
    const auto lat = line_lattice(p, N, n);
    if (!on_lattice(e, lat, p)) return 0;
    return BigRational(count_stars(p, n, e) * count_stars(p, 2 * N - n, e), count_ensembles(p, N));
}

BigRational blue_weight(int p, int N, int n, const std::vector<int>& e) {
    const auto lat = line_lattice(p, N, n);
    if (!on_lattice(e, lat, blue_count(N, n))) return 0;
    const int m = std::min(n, 2 * N - n);  // the law of line n equals that of line 2N - n
    BigRational w = 1;
    for (int x : e) {
        const int a = (2 * N - m + x) / 2 + p, b = (2 * N - m - x) / 2 + p - 1;
        const int c = (m + x) / 2 + p, d = (m - x) / 2 + p - 1;
        if (a < 0 || b < 0 || c < 0 || d < 0) return 0;
        w *= BigRational(factorial(a) * factorial(b), factorial(c) * factorial(d));
        if (m % 2 == 1) w *= BigInt(x + 1) * (x + 1);
    }
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const BigInt d = BigInt(e[j] + 1) * (e[j] + 1) - BigInt(e[i] + 1) * (e[i] + 1);
            w *= d * d;
        }
    return w;
}

LineLaw line_law(int p, int N, int n, ParticleKind kind, std::size_t max_configs) {
    const auto lat = line_lattice(p, N, n);
    const int size = kind == ParticleKind::Red ? p : blue_count(N, n);
    const int universe = static_cast<int>(lat.size());
    // C(universe, size) guard
    BigInt support = binomial(universe, size);
    if (support > max_configs) throw SizeError("line_law: support too large (" + support.str() + ")");
    LineLaw law;
    law.p = p;
    law.N = N;
    law.n = n;
    law.kind = kind;
    std::vector<BigRational> raw;
    for_each_subset(universe, size, [&](const std::vector<int>& idx) {
        std::vector<int> cfg(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) cfg[i] = lat[idx[i]];
        BigRational w = kind == ParticleKind::Red ? BigRational(count_stars(p, n, cfg) * count_stars(p, 2 * N - n, cfg))
                                                  : blue_weight(p, N, n, cfg);
        law.configs.push_back(std::move(cfg));
        raw.push_back(std::move(w));
    });
    BigInt common = 1;
    for (const auto& w : raw) {
        const BigInt d = boost::multiprecision::denominator(w);
        common = common / boost::multiprecision::gcd(common, d) * d;
    }
    law.total = 0;
    for (const auto& w : raw) {
        law.weights.push_back(boost::multiprecision::numerator(w) * (common / boost::multiprecision::denominator(w)));
        law.total += law.weights.back();
    }
    if (law.total == 0) throw ConsistencyError("line_law: empty support");
    return law;
}

BigRational blue_measure(int p, int N, int n, const std::vector<int>& e) {
    const BigRational w = blue_weight(p, N, n, e);
    if (w == 0) return 0;
    const auto lat = line_lattice(p, N, n);
    const int size = blue_count(N, n);
    if (binomial(static_cast<int>(lat.size()), size) > 5'000'000) throw SizeError("blue_measure: support too large");
    BigRational z = 0;
    for_each_subset(static_cast<int>(lat.size()), size, [&](const std::vector<int>& idx) {
        std::vector<int> cfg(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) cfg[i] = lat[idx[i]];
        z += blue_weight(p, N, n, cfg);
    });
    return w / z;
}

std::size_t LineLaw::sample_index(Rng& rng) const {
    BigInt u = uniform_below(total, rng);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (u < weights[i]) return i;
        u -= weights[i];
    }
    throw ConsistencyError("LineLaw::sample_index: fell off the end");
}

BigInt uniform_below(const BigInt& bound, Rng& rng) {
    if (bound <= 0) throw DomainError("uniform_below: bound must be positive");
    const unsigned bits = boost::multiprecision::msb(bound) + 1;
    while (true) {
        BigInt r = 0;
        for (unsigned got = 0; got < bits; got += 64) r = (r << 64) | BigInt(rng());
        r &= (BigInt(1) << bits) - 1;
        if (r < bound) return r;
    }
}

BigInt cone_card(const std::vector<int>& top, int n) {
    if (n < 1) throw DomainError("cone_card: n must be >= 1");
    if (static_cast<int>(top.size()) != n / 2) throw DomainError("cone_card: need floor(n/2) entries");
    for (std::size_t i = 0; i < top.size(); ++i) {
        if (top[i] <= 0) throw DomainError("cone_card: entries must be positive");
        if (i > 0 && top[i] >= top[i - 1]) throw DomainError("cone_card: entries must decrease strictly");
        if ((top[i] % 2 == 0) != (n % 2 == 1)) throw DomainError("cone_card: x must be even on odd levels, odd on even levels");
    }
    BigRational v(1, cone_constant(n));
    for (std::size_t i = 0; i < top.size(); ++i) {
        if (n % 2) v *= BigRational(top[i], 2);
        for (std::size_t j = i + 1; j < top.size(); ++j)
            v *= BigRational(BigInt(top[i]) * top[i] - BigInt(top[j]) * top[j], 4);
    }
    if (v < 0 || boost::multiprecision::denominator(v) != 1)
        throw ConsistencyError("cone_card: formula did not give a nonnegative integer");
    return boost::multiprecision::numerator(v);
}

BigInt cone_card_bruteforce(const std::vector<int>& top, int n) {
    // count interlaced chains below level n; level k-1 entry i lies strictly between
    // the next lower entry of level k (or the phantom 0) and entry i of level k, with parity of k-1
    std::function<BigInt(const std::vector<int>&, int)> below = [&](const std::vector<int>& up, int k) -> BigInt {
        if (k <= 2) return 1;  // level 1 carries no particles
        const int cnt = (k - 1) / 2;
        const int parity = (k - 1) % 2 == 1 ? 0 : 1;  // odd level -> even x
        BigInt total = 0;
        std::vector<int> cur(cnt);
        std::function<void(int)> rec = [&](int i) {
            if (i == cnt) {
                total += below(cur, k - 1);
                return;
            }
            const int lo = i + 1 < static_cast<int>(up.size()) ? up[i + 1] : 0;
            for (int v = lo + 1; v < up[i]; ++v)
                if (((v % 2) + 2) % 2 == parity) {
                    cur[i] = v;
                    rec(i + 1);
                }
        };
        rec(0);
        return total;
    };
    return below(top, n);
}

std::vector<int> blue_positions_x(const PathEnsemble& ens, int k) {
    std::vector<int> red(ens.p);
    for (int i = 0; i < ens.p; ++i) red[i] = ens.heights[i][k];
    auto holes = complement_on_line(ens.p, ens.N, k, red);
    std::vector<int> x;
    for (auto it = holes.rbegin(); it != holes.rend(); ++it) x.push_back(*it + 1);
    return x;
}

void validate_ensemble(const PathEnsemble& ens) {
    check_pN(ens.p, ens.N);
    if (static_cast<int>(ens.heights.size()) != ens.p) throw DomainError("ensemble: need p walkers");
    for (int i = 0; i < ens.p; ++i) {
        const auto& h = ens.heights[i];
        if (static_cast<int>(h.size()) != 2 * ens.N + 1) throw DomainError("ensemble: walk length must be 2N");
        if (h.front() != 2 * i || h.back() != 2 * i) throw DomainError("ensemble: wrong start or end height");
        for (int t = 0; t <= 2 * ens.N; ++t) {
            if (h[t] < 0) throw DomainError("ensemble: walk below the wall");
            if (t > 0 && std::abs(h[t] - h[t - 1]) != 1) throw DomainError("ensemble: steps must be +-1");
            if (i > 0 && h[t] <= ens.heights[i - 1][t]) throw DomainError("ensemble: walkers intersect");
        }
    }
}

std::vector<PathEnsemble> enumerate_all(int p, int N) {
    check_pN(p, N);
    if (p > 3 || N > 4) throw SizeError("enumerate_all: limited to p <= 3, N <= 4");
    std::vector<PathEnsemble> out;
    const int T = 2 * N;
    std::vector<std::vector<int>> path{starts(p)};
    std::function<void()> dfs = [&]() {
        const int t = static_cast<int>(path.size()) - 1;
        if (t == T) {
            PathEnsemble e{p, N, std::vector<std::vector<int>>(p, std::vector<int>(T + 1))};
            for (int s = 0; s <= T; ++s)
                for (int i = 0; i < p; ++i) e.heights[i][s] = path[s][i];
            out.push_back(std::move(e));
            return;
        }
        const auto h = path.back();
        for (int mask = 0; mask < (1 << p); ++mask) {
            std::vector<int> g(p);
            bool ok = true;
            for (int i = 0; i < p && ok; ++i) {
                g[i] = h[i] + ((mask >> i) & 1 ? 1 : -1);
                ok = g[i] >= 0 && (i == 0 || g[i] > g[i - 1]) && std::abs(g[i] - 2 * i) <= T - t - 1;
            }
            if (!ok) continue;
            path.push_back(std::move(g));
            dfs();
            path.pop_back();
        }
    };
    dfs();
    return out;
}

PathEnsemble sample_ensemble(int p, int N, Rng& rng) {
    check_pN(p, N);
    const int T = 2 * N;
    const auto targets = starts(p);
    PathEnsemble ens{p, N, std::vector<std::vector<int>>(p, std::vector<int>(T + 1))};
    std::vector<int> h = starts(p);
    for (int i = 0; i < p; ++i) ens.heights[i][0] = h[i];
    auto row = [&](int rem, int height) {
        std::vector<BigInt> r(p);
        for (int j = 0; j < p; ++j) r[j] = walk_count_wall(rem, height, targets[j]);
        return r;
    };
    for (int t = 0; t < T; ++t) {
        const int rem = T - t - 1;
        // rows: chosen walkers fixed, later walkers summed over both moves (multilinearity)
        std::vector<std::vector<BigInt>> m(p);
        for (int i = 0; i < p; ++i) {
            auto up = row(rem, h[i] + 1), down = row(rem, h[i] - 1);
            for (int j = 0; j < p; ++j) up[j] += down[j];
            m[i] = std::move(up);
        }
        BigInt total = bareiss_det(m);
        if (total <= 0) throw ConsistencyError("sample_ensemble: no completion");
        for (int i = 0; i < p; ++i) {
            m[i] = row(rem, h[i] + 1);
            const BigInt w_up = bareiss_det(m);
            if (uniform_below(total, rng) < w_up) {
                h[i] += 1;
                total = w_up;
            } else {
                h[i] -= 1;
                m[i] = row(rem, h[i]);
                total -= w_up;
            }
        }
        for (int i = 0; i < p; ++i) ens.heights[i][t + 1] = h[i];
    }
    return ens;
}

void write_ensemble(std::ostream& os, const PathEnsemble& ens, std::uint64_t seed) {
    os << "p,N,seed\n" << ens.p << ',' << ens.N << ',' << seed << '\n';
    for (const auto& w : ens.heights) {
        for (std::size_t t = 0; t < w.size(); ++t) os << (t ? "," : "") << w[t];
        os << '\n';
    }
}

}  // namespace agum
