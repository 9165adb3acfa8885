#include "agum/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "agum/errors.hpp"
#include "agum/halfhex.hpp"
#include "agum/kernel.hpp"
#include "agum/limits.hpp"
#include "agum/matrix_sampler.hpp"
#include "agum/measures.hpp"
#include "agum/rng.hpp"
#include "agum/specfun.hpp"
#include "agum/stats.hpp"

namespace agum {

namespace {

using std::numbers::pi;

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Recorder {
    CriterionResult& r;
    void check(const std::string& what, bool ok, const std::string& detail = "") { r.checks.push_back({what, ok, detail, false}); }
    void info(const std::string& what, const std::string& detail) { r.checks.push_back({what, true, detail, true}); }
    // measured <= tol
    void bound(const std::string& what, double measured, double tol) {
        check(what, measured <= tol, "measured " + fmt("%.3g", measured) + ", tolerance " + fmt("%.3g", tol));
    }
    void p_above(const std::string& what, const TestResult& t, double alpha) {
        check(what, t.p_value > alpha, "statistic " + fmt("%.4g", t.statistic) + ", p " + fmt("%.3g", t.p_value) + " (> " + fmt("%g", alpha) + ")");
    }
};

std::vector<int> evens(int p) {
    std::vector<int> v(p);
    for (int i = 0; i < p; ++i) v[i] = 2 * i;
    return v;
}

std::vector<std::vector<int>> subsets(const std::vector<int>& lat, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = i; j < lat.size(); ++j) {
            cur.push_back(lat[j]);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// ---- 1 -------------------------------------------------------------------
void exact_counting(Recorder& rec, std::uint64_t) {
    int mismatches = 0, cases = 0;
    for (int p = 1; p <= 3; ++p)
        for (int N = 1; N <= 4; ++N) {
            ++cases;
            if (BigInt(enumerate_all(p, N).size()) != count_stars(p, 2 * N, evens(p))) ++mismatches;
        }
    rec.check("enumeration count == product formula, p <= 3, N <= 4", mismatches == 0,
              std::to_string(cases - mismatches) + "/" + std::to_string(cases) + " equal");
    int bad = 0, sets = 0;
    for (int p = 1; p <= 3; ++p)
        for (int m = 0; m <= 8; ++m) {
            const auto dp = star_counts_dp(p, m);
            for (const auto& [e, c] : dp) {
                ++sets;
                if (count_stars(p, m, e) != c || count_stars_lgv(p, m, e) != c) ++bad;
            }
        }
    rec.check("star counts == DP == LGV for every reachable endpoint set, p <= 3, m <= 8", bad == 0,
              std::to_string(sets - bad) + "/" + std::to_string(sets) + " equal");
}

// ---- 2 -------------------------------------------------------------------
void exact_measures(Recorder& rec, std::uint64_t) {
    int bad = 0, checked = 0;
    for (int p = 1; p <= 2; ++p)
        for (int N = 1; N <= 2; ++N) {
            const auto all = enumerate_all(p, N);
            for (int n = 0; n <= 2 * N; ++n) {
                std::map<std::vector<int>, long> red, blue;
                for (const auto& e : all) {
                    std::vector<int> r;
                    for (const auto& w : e.heights) r.push_back(w[n]);
                    ++red[r];
                    ++blue[complement_on_line(p, N, n, r)];
                }
                for (const auto& [c, k] : red) bad += red_measure(p, N, n, c) != BigRational(k, all.size()), ++checked;
                for (const auto& [c, k] : blue) bad += blue_measure(p, N, n, c) != BigRational(k, all.size()), ++checked;
            }
        }
    rec.check("red/blue measures == enumeration frequencies, p <= 2, N <= 2, all lines", bad == 0,
              std::to_string(checked - bad) + "/" + std::to_string(checked) + " exact");
    int dual_bad = 0, dual = 0, norm_bad = 0;
    for (int p = 1; p <= 4; ++p)
        for (int N = 1; N <= 4; ++N)
            for (int n = 0; n <= 2 * N; ++n) {
                const auto lat = line_lattice(p, N, n);
                BigRational sb = 0, sr = 0;
                for (const auto& h : subsets(lat, blue_count(N, n))) {
                    const auto b = blue_measure(p, N, n, h);
                    sb += b;
                    ++dual;
                    if (b != red_measure(p, N, n, complement_on_line(p, N, n, h))) ++dual_bad;
                }
                for (const auto& e : subsets(lat, p)) sr += red_measure(p, N, n, e);
                if (sb != 1 || sr != 1) ++norm_bad;
            }
    rec.check("duality blue(h) == red(complement), p <= 4, N <= 4", dual_bad == 0,
              std::to_string(dual - dual_bad) + "/" + std::to_string(dual) + " exact");
    rec.check("measures sum to 1 on every line", norm_bad == 0, std::to_string(norm_bad) + " lines off");
}

// ---- 3 -------------------------------------------------------------------
void cone_counting(Recorder& rec, std::uint64_t seed) {
    Rng rng(seed);
    int bad = 0, total = 0;
    for (int n = 1; n <= 6; ++n) {
        const int parity = n % 2 == 1 ? 0 : 1;
        std::vector<int> pool;
        for (int v = 1; v <= 25; ++v)
            if (v % 2 == parity) pool.push_back(v);
        for (int t = 0; t < 50; ++t) {
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<int> top(pool.begin(), pool.begin() + n / 2);
            std::sort(top.rbegin(), top.rend());
            ++total;
            if (cone_card(top, n) != cone_card_bruteforce(top, n)) ++bad;
        }
    }
    rec.check("cone_card == brute-force chain count, n <= 6, 50 random tops each", bad == 0,
              std::to_string(total - bad) + "/" + std::to_string(total) + " equal");
}

// ---- 4 -------------------------------------------------------------------
void kernel_ground_truth(Recorder& rec, std::uint64_t seed) {
    rec.bound("|K((2,0),(2,0)) - 2/sqrt(pi)|", std::abs(kernel_eval(2, 0, 2, 0) - 2 / std::sqrt(pi)), 1e-10);
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double a = 5 * rng.uniform(), b = 5 * rng.uniform();
        worst = std::max({worst, std::abs(corr_det({{2, a}, {2, b}}, Gauge::Plain)), std::abs(corr_det({{2, a}, {2, b}}, Gauge::Symmetric))});
    }
    rec.bound("species-2 two-point determinant (2000 pairs on [0,5]^2)", worst, 1e-10);
    double gauge = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<LevelPoint> pts(1 + rng() % 6);
        for (auto& p : pts) p = {static_cast<int>(1 + rng() % 10), 3.5 * rng.uniform()};
        const double a = corr_det(pts, Gauge::Plain), b = corr_det(pts, Gauge::Symmetric);
        gauge = std::max(gauge, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    rec.bound("gauge invariance of corr_det, 100 random point sets (relative)", gauge, 1e-10);
}

// ---- 5 -------------------------------------------------------------------
double integrate_split(const Integrand& f, std::vector<double> breaks, double tol) {
    std::sort(breaks.begin(), breaks.end());
    double acc = 0.0, a = 0.0;
    for (double b : breaks)
        if (b > a) {
            acc += quad_interval(f, a, b, QuadOptions{tol, tol, 4000}).value;
            a = b;
        }
    return acc + quad_semiinf(f, a, QuadOptions{tol, tol, 4000}).value;
}

void trace_and_reproducing(Recorder& rec, std::uint64_t) {
    double worst = 0.0;
    for (int s = 1; s <= 12; ++s) {
        const double v = quad_semiinf([&](double x) { return kernel_eval(s, x, s, x); }, 0.0, 1e-11).value;
        worst = std::max(worst, std::abs(v - s / 2));
    }
    rec.bound("int K((s,x),(s,x)) dx - floor(s/2), s <= 12", worst, 1e-6);
    const auto f = [](int s, double x, int t, double y) { return kernel_eval(s, x, t, y, Gauge::Symmetric); };
    const std::vector<std::pair<double, double>> coords{{0.3, 0.9}, {1.4, 0.2}, {0.7, 0.7}};
    double down = 0.0, up = 0.0, up_naive = 0.0;
    int triples = 0;
    for (int s = 1; s <= 8; ++s)
        for (int t = 1; t <= 8; ++t)
            for (int u = 1; u <= 8; ++u) {
                const bool dn = s >= t && t >= u, upw = s < t && t < u;
                if (!dn && !upw) continue;
                ++triples;
                for (auto [x, y] : coords) {
                    const double v = integrate_split([&](double z) { return f(s, x, t, z) * f(t, z, u, y); }, {x, y}, 1e-12);
                    const double target = f(s, x, u, y);
                    if (dn) down = std::max(down, std::abs(v - target));
                    else {
                        up = std::max(up, std::abs(v + target));
                        up_naive = std::max(up_naive, std::abs(v - target));
                    }
                }
            }
    rec.bound("reproducing, s >= t >= u <= 8: |int f(s,t) f(t,u) - f(s,u)|", down, 1e-8);
    rec.bound("reproducing, s < t < u <= 8: |int f(s,t) f(t,u) + f(s,u)| (sign-corrected)", up, 1e-8);
    rec.info("naive sign for s < t < u", "max |int - (+f)| = " + fmt("%.3g", up_naive) + " over " + std::to_string(triples) + " triples");
}

// ---- 6 -------------------------------------------------------------------
void sampler_equivalence(Recorder& rec, std::uint64_t seed) {
    const int n = 5, reps = 20000;
    Rng base(seed);
    std::vector<std::vector<double>> ma(n + 1), bo(n + 1);
    long interlace_bad = 0;
    double trace_err = 0.0, prod_err = 0.0;
    for (int i = 0; i < reps; ++i) {
        Rng r1 = base.split(2 * i), r2 = base.split(2 * i + 1);
        std::vector<BorderStep> steps;
        const auto a = sample_minor_chain_matrix(n, r1);
        const auto b = sample_minor_chain_bordered(n, r2, &steps);
        if (!chain_interlaced(a)) ++interlace_bad;
        if (!chain_interlaced(b)) ++interlace_bad;
        for (int k = 2; k <= n; ++k) {
            ma[k].push_back(a.level(k)[0]);
            bo[k].push_back(b.level(k)[0]);
        }
        for (const auto& st : steps) {
            double sb = 0, sa = 0, sq = st.q0.value_or(0.0);
            for (double v : st.b) sb += v * v;
            for (double v : st.a) sa += v * v;
            for (double v : st.q) sq += v;
            trace_err = std::max(trace_err, std::abs(sb - sa - sq) / std::max(1.0, sb));
            if (st.q0) {
                double lb = 0, la = std::log(*st.q0);
                for (double v : st.b) lb += 2 * std::log(v);
                for (double v : st.a) la += 2 * std::log(v);
                prod_err = std::max(prod_err, std::abs(std::expm1(lb - la)));
            }
        }
    }
    for (int k = 2; k <= n; ++k)
        rec.p_above("level " + std::to_string(k) + " largest eigenvalue, matrix vs bordered (2e4 each)", ks_two_sample(ma[k], bo[k]), 0.01);
    rec.check("interlacing on every sample", interlace_bad == 0, std::to_string(interlace_bad) + " violations in " + std::to_string(2 * reps));
    rec.bound("trace identity sum b^2 - sum a^2 - sum q (relative)", trace_err, 1e-10);
    rec.bound("product identity prod b^2 / (q0 prod a^2) - 1", prod_err, 1e-10);
}

// ---- 7 -------------------------------------------------------------------
void marginal_law(Recorder& rec, std::uint64_t seed) {
    Rng base(seed);
    std::vector<double> top3;
    for (int n = 2; n <= 5; ++n) {
        const int reps = 100000;
        std::vector<double> top;
        top.reserve(reps);
        for (int i = 0; i < reps; ++i) {
            Rng r = base.split(static_cast<std::uint64_t>(n) * 1000000 + i);
            auto A = sample_antisymmetric(n, r);
            top.push_back(positive_spectrum(A, n)[0]);
        }
        rec.p_above("n = " + std::to_string(n) + ": largest eigenvalue vs marginal-law CDF (1e5)",
                    ks_one_sample(top, [n](double x) { return ague_top_cdf(n, x); }), 0.01);
        if (n == 3) top3 = top;
    }
    const double s = norm_constants(3).W / naive_W(3);
    const auto naive = ks_one_sample(top3, [s](double x) { return s * ague_top_cdf(3, x); });
    rec.info("n = 3 with the naive normaliser", "KS " + fmt("%.4g", naive.statistic) + ", p " + fmt("%.3g", naive.p_value) + " (rejected)");
}

// ---- 8 -------------------------------------------------------------------
void discrete_to_continuum(Recorder& rec, std::uint64_t seed) {
    const int p = 40, N = 40, line = 4, reps = 10000;
    const auto law = line_law(p, N, line, ParticleKind::Blue);
    Rng rng(seed);
    std::vector<double> top_x, jitter;
    for (int i = 0; i < reps; ++i) {
        const auto& cfg = law.configs[law.sample_index(rng)];
        top_x.push_back(cfg.back() + 1.0);  // x = e + 1
        jitter.push_back(2.0 * rng.uniform() - 1.0);  // spread each lattice cell (width 2) uniformly
    }
    auto ks_at = [&](double scale, bool jit) {
        std::vector<double> v(reps);
        for (int i = 0; i < reps; ++i) v[i] = (top_x[i] + (jit ? jitter[i] : 0.0)) / scale;
        return ks_one_sample(v, [](double x) { return ague_top_cdf(4, x); });
    };
    const double target_scale = std::sqrt(2.0 * N * (1 - 1 / std::sqrt(3.0)));
    rec.p_above("largest blue x / sqrt(2N(1-1/sqrt3)) vs level-4 law, p = N = 40, 1e4", ks_at(target_scale, true), 0.001);
    double mean = 0;
    for (double x : top_x) mean += x / target_scale / reps;
    const double cmean = quad_semiinf([](double x) { return 1 - ague_top_cdf(4, x); }, 0.0, 1e-10).value;
    rec.info("mean rescaled largest blue x", fmt("%.4g", mean) + " vs continuum mean " + fmt("%.4g", cmean));
    const double alt = std::sqrt(8.0 * N);
    const auto t_alt = ks_at(alt, true);
    rec.info("same with scale sqrt(8N)", "KS " + fmt("%.4g", t_alt.statistic) + ", p " + fmt("%.3g", t_alt.p_value));
    const auto raw = ks_at(target_scale, false);
    rec.info("target scale without the lattice-cell spread", "KS " + fmt("%.4g", raw.statistic) + ", p " + fmt("%.3g", raw.p_value));
}

// ---- 9 -------------------------------------------------------------------
void soft_edge(Recorder& rec, std::uint64_t) {
    const double ref = airy_kernel(0, 0);
    std::vector<double> err;
    std::string trail;
    for (int n : {50, 100, 200}) {
        err.push_back(std::abs(scaled_kernel_soft(n, 0, 0, 0, 0) / ref - 1));
        trail += (trail.empty() ? "" : ", ") + fmt("%.3g", err.back());
    }
    rec.bound("|K_200(c=0,Y=0)/K_Airy(0,0) - 1|", err.back(), 0.05);
    rec.check("error decreasing over n = 50, 100, 200", err[0] > err[1] && err[1] > err[2], trail);
    const double c0 = scaled_kernel_soft(200, 0, 0, 0, 0), c1 = scaled_kernel_soft(200, 1, 0, 1, 0);
    rec.bound("species independence |K(c=1)/K(c=0) - 1| at n = 200", std::abs(c1 / c0 - 1), 0.10);
    const ScalingOptions lit{Centering::Literal, LimitGauge::Exact};
    rec.info("literal sqrt(4n) centring at n = 200", "relative error " + fmt("%.3g", std::abs(scaled_kernel_soft(200, 0, 0, 0, 0, lit) / ref - 1)));
}

// ---- 10 ------------------------------------------------------------------
void soft_edge_extended(Recorder& rec, std::uint64_t) {
    const auto rows = convergence(Regime::Soft2, {50, 100, 200}, {0, 0}, {0.5, 0});
    std::string trail;
    for (const auto& r : rows) trail += (trail.empty() ? "" : ", ") + fmt("%.3g", r.rel_error);
    rec.bound("|K_200 / K_ext(0,0;0.5,0) - 1|", rows.back().rel_error, 0.10);
    rec.check("error decreasing over n = 50, 100, 200", rows[0].rel_error > rows[1].rel_error && rows[1].rel_error > rows[2].rel_error, trail);
    const ScalingOptions asym{Centering::Midpoint, LimitGauge::Asymptotic};
    rec.info("asymptotic gauge at n = 200", "relative error " + fmt("%.3g", std::abs(scaled_kernel_soft2(200, 0, 0, 0.5, 0, asym) / rows.back().limit - 1)));
}

// ---- 11 ------------------------------------------------------------------
void hard_edge(Recorder& rec, std::uint64_t) {
    rec.bound("|K_100(c=1,Y=0) / 2 - 1| (K^-(0,0) = 2)", std::abs(scaled_kernel_hard(100, 1, 0, 1, 0) / 2 - 1), 0.05);
    rec.bound("|K_100(c=0,Y=0)| (K^+ vanishes at the origin)", std::abs(scaled_kernel_hard(100, 0, 0, 0, 0)), 0.05);
    double worst = 0.0;
    for (int dt : {0, 1})
        for (double d : {0.3, -0.8, 1.7}) {
            const double h = hard_kernel(1, 100 + d, 1 + dt, 100);
            const double b = (dt ? -1.0 : 1.0) * bead_kernel(0, d, dt, 0);
            worst = std::max(worst, std::abs(h / b - 1));
        }
    rec.bound("hard kernel at offset 100 vs bead, dtau in {0,1}, gauge (-1)^dtau (relative)", worst, 0.02);
}

// ---- 12 ------------------------------------------------------------------
void special_functions(Recorder& rec, std::uint64_t) {
    double ode = 0.0;
    // five-point second difference: truncation ~h^4, rounding ~eps/h^2
    const double h = 2e-3;
    for (double x = -10; x <= 10; x += 0.37) {
        const double d2 = (-airy_ai(x + 2 * h) + 16 * airy_ai(x + h) - 30 * airy_ai(x) + 16 * airy_ai(x - h) - airy_ai(x - 2 * h)) /
                          (12 * h * h);
        ode = std::max(ode, std::abs(d2 - x * airy_ai(x)));
    }
    rec.bound("Airy ODE residual |Ai'' - x Ai| on [-10, 10]", ode, 1e-7);
    double orth = 0.0;
    for (int i = 0; i <= 16; ++i)
        for (int j = i % 2; j <= 16; j += 2) {
            auto f = [&](double x) { return (hermite_eval(i, x, true) * hermite_eval(j, x, true)).value(); };
            const double ref = std::sqrt(hermite_norm(i) * hermite_norm(j));
            const double v = quad_semiinf(f, 0.0, QuadOptions{1e-11 * ref, 1e-12, 4000}).value;
            orth = std::max(orth, std::abs(v - (i == j ? hermite_norm(i) : 0.0)) / ref);
        }
    rec.bound("half-line Hermite orthogonality, same parity, degree <= 16 (relative)", orth, 1e-8);
    double rep = 0.0;
    for (int n = 1; n <= 8; ++n)
        for (double x : {-1.0, 0.0, 0.5, 2.0, 4.0}) {
            const double v = quad_semiinf([&](double t) { return ierfc(n - 1, t); }, x, 1e-14).value;
            rep = std::max(rep, std::abs(ierfc(n, x) - v) / std::max(1e-300, std::abs(v)));
        }
    rec.bound("i^n erfc(x) vs int_x^inf i^{n-1} erfc (relative)", rep, 1e-8);
}

struct Entry {
    const char* title;
    double budget;
    void (*run)(Recorder&, std::uint64_t);
};

const Entry kEntries[kCriteriaCount] = {
    {"Exact counting", 30, exact_counting},
    {"Exact measures and duality", 10, exact_measures},
    {"Cone counting", 5, cone_counting},
    {"Kernel ground truth", 5, kernel_ground_truth},
    {"Trace and reproducing property", 60, trace_and_reproducing},
    {"Sampler equivalence", 120, sampler_equivalence},
    {"Marginal law", 120, marginal_law},
    {"Discrete-to-continuum limit", 600, discrete_to_continuum},
    {"Soft edge", 60, soft_edge},
    {"Soft edge, extended", 60, soft_edge_extended},
    {"Hard edge and bulk", 60, hard_edge},
    {"Special functions", 10, special_functions},
};

}  // namespace

bool CriterionResult::passed() const {
    if (seconds > budget_seconds) return false;
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.ok; });
}

std::string criterion_title(int id) {
    if (id < 1 || id > kCriteriaCount) throw DomainError("criterion id must be in 1.." + std::to_string(kCriteriaCount));
    return kEntries[id - 1].title;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > kCriteriaCount) throw DomainError("criterion id must be in 1.." + std::to_string(kCriteriaCount));
    const Entry& e = kEntries[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = e.title;
    r.budget_seconds = e.budget;
    Recorder rec{r};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        e.run(rec, Rng(seed).split(static_cast<std::uint64_t>(id)).seed());
    } catch (const std::exception& ex) {
        rec.check("completed without exception", false, ex.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void print_result(std::ostream& os, const CriterionResult& r, bool verbose) {
    char head[160];
    std::snprintf(head, sizeof head, "%s [%d] %s (%.1f s / %.0f s)", r.passed() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                  r.budget_seconds);
    os << head << '\n';
    if (!verbose) return;
    for (const auto& c : r.checks)
        os << "    " << (c.informational ? "info" : (c.ok ? "ok  " : "FAIL")) << "  " << c.what << (c.detail.empty() ? "" : ": ") << c.detail << '\n';
    if (r.seconds > r.budget_seconds) os << "    FAIL  time budget exceeded\n";
}

}  // namespace agum
