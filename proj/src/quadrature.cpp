#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "agum/errors.hpp"
#include "agum/specfun.hpp"

namespace agum {

namespace {

// 7-point Gauss / 15-point Kronrod (QUADPACK qk15 constants).
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * wgk[7], resg = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(c - dx), f2 = f(c + dx);
        resk += wgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    const double value = resk * h;
    double err = std::abs((resk - resg) * h);
    if (!std::isfinite(value)) throw NumericError("quadrature: non-finite integrand value");
    return {a, b, value, err};
}

}  // namespace

QuadResult quad_interval(const Integrand& f, double a, double b, const QuadOptions& opt) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("quad_interval: non-finite limits");
    if (a == b) return {};
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, a, b);
    heap.push(first);
    double total = first.value, err = first.error;
    int panels = 1;
    auto converged = [&] { return err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    while (!converged()) {
        if (panels >= opt.max_panels) {
            throw AccuracyError("quadrature: no convergence after " + std::to_string(panels) + " panels", total,
                                err);
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // cannot split further: accept what we have
            heap.push(worst);
            break;
        }
        Panel l = gk15(f, worst.a, mid), r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        heap.push(l);
        heap.push(r);
        ++panels;
        // recompute the error sum from scratch now and then to avoid drift
        if (panels % 64 == 0) {
            auto copy = heap;
            err = 0.0;
            total = 0.0;
            while (!copy.empty()) {
                err += copy.top().error;
                total += copy.top().value;
                copy.pop();
            }
        } else {
            err += l.error + r.error - worst.error;
        }
    }
    double value = 0.0, e = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    return {value, e, panels};
}

QuadResult quad_semiinf(const Integrand& f, double a, const QuadOptions& opt, double scale) {
    if (!std::isfinite(a)) throw DomainError("quad_semiinf: non-finite lower limit");
    if (!(scale > 0)) throw DomainError("quad_semiinf: scale must be positive");
    // w = 1 - v in (0, 1]; u = a - scale * log(w), du = scale / w dw
    auto g = [&](double w) {
        const double u = a - scale * std::log(w);
        const double fu = f(u);
        if (fu == 0.0) return 0.0;
        return fu * scale / w;
    };
    return quad_interval(g, 0.0, 1.0, opt);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

}  // namespace agum
