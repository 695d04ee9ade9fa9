#pragma once
#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>
#include <utility>

#include "corisk/errors.hpp"

namespace corisk {

struct QuadResult {
    double value = 0.0;
    double err = 0.0; // running absolute error estimate
    long evals = 0;
};

namespace detail {

// 15-point Kronrod nodes on [0,1] scale (abscissae for [-1,1], symmetric) and
// weights, with the embedded 7-point Gauss rule. Indices 1,3,5 and the centre
// are the Gauss nodes.
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
inline void gk15(F&& f, double a, double b, double& val, double& err, long& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = gk_wg[3] * fc;
    double resk = gk_wk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_x[i];
        const double f1 = f(c - dx), f2 = f(c + dx);
        resk += gk_wk[i] * (f1 + f2);
        if (i == 1 || i == 3 || i == 5) resg += gk_wg[(i - 1) / 2] * (f1 + f2);
    }
    val = resk * h;
    err = std::fabs((resk - resg) * h);
    evals += 15;
    if (!std::isfinite(val))
        throw numerical_error("quadrature: non-finite integrand value");
}

} // namespace detail

// Globally adaptive Gauss-Kronrod 7/15 quadrature: repeatedly bisect the
// interval with the largest local error estimate until the summed estimate
// meets abs_tol or the evaluation budget runs out. Endpoints are never
// evaluated (all Kronrod nodes are interior), so integrands with integrable
// endpoint singularities are handled by refinement alone.
template <typename F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              long max_evals = 400000) {
    QuadResult r;
    if (!(b > a)) return r;
    struct Piece {
        double a, b, val, err;
    };
    auto cmp = [](const Piece& x, const Piece& y) { return x.err < y.err; };
    std::priority_queue<Piece, std::vector<Piece>, decltype(cmp)> heap(cmp);

    double val, err;
    detail::gk15(f, a, b, val, err, r.evals);
    heap.push({a, b, val, err});
    double total_val = val, total_err = err;

    while (total_err > abs_tol && r.evals + 30 <= max_evals && !heap.empty()) {
        Piece p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) continue; // width underflow: keep its error as-is
        double v1, e1, v2, e2;
        detail::gk15(f, p.a, m, v1, e1, r.evals);
        detail::gk15(f, m, p.b, v2, e2, r.evals);
        total_val += (v1 + v2) - p.val;
        total_err += (e1 + e2) - p.err;
        heap.push({p.a, m, v1, e1});
        heap.push({m, p.b, v2, e2});
    }
    r.value = total_val;
    r.err = std::fabs(total_err);
    return r;
}

// Convenience wrapper that also splits at interior breakpoints (kinks / jump
// locations of the integrand), integrating each closed piece independently.
template <typename F>
QuadResult integrate_split(F&& f, double a, double b, const std::vector<double>& breaks,
                           double abs_tol, long max_evals = 400000) {
    std::vector<double> pts{a};
    for (double t : breaks)
        if (t > a && t < b) pts.push_back(t);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    QuadResult total;
    const double piece_tol = abs_tol / static_cast<double>(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadResult r = integrate_adaptive(f, pts[i], pts[i + 1], piece_tol, max_evals);
        total.value += r.value;
        total.err += r.err;
        total.evals += r.evals;
    }
    return total;
}

// Brent's method on a bracketing interval [a,b] with f(a), f(b) of opposite
// sign. Convergence when the interval shrinks below xtol_abs + xtol_rel*|x|.
template <typename F>
double brent_root(F&& f, double a, double b, double fa, double fb,
                  double xtol_abs = 1e-13, double xtol_rel = 4e-16, int maxit = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw numerical_error("brent_root: interval does not bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < maxit; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 0.5 * (xtol_abs + xtol_rel * std::fabs(b));
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) { // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else { // inverse quadratic
                const double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw numerical_error("brent_root: iteration limit exceeded");
}

template <typename F>
double brent_root(F&& f, double a, double b, double xtol_abs = 1e-13,
                  double xtol_rel = 4e-16, int maxit = 200) {
    return brent_root(f, a, b, f(a), f(b), xtol_abs, xtol_rel, maxit);
}

} // namespace corisk
