#pragma once
#include <algorithm>
#include <cmath>
#include <functional>

#include "corisk/copula.hpp"
#include "corisk/distortion.hpp"
#include "corisk/marginal.hpp"
#include "corisk/numerics.hpp"

namespace corisk::testsupport {

// Reference evaluation straight from the tail-integral definition
//   D_h[T] = int_0^inf h(S(t)) dt - int_{-inf}^0 (1 - h(S(t))) dt,
// deliberately independent of the quantile-integral production route (no dual
// measures, no conditional quantile inversion). Truncation at survival /
// cdf mass 1e-11 keeps the omitted tails below ~1e-9 for the built-in h's.
inline double direct_tail_risk(const std::function<double(double)>& surv,
                               const Distortion& h, double lo, double hi,
                               double tol = 1e-9) {
    double total = 0.0;
    if (hi > 0.0)
        total += integrate_adaptive([&](double t) { return h.eval(surv(t)); }, 0.0, hi,
                                    tol, 2000000)
                     .value;
    if (lo < 0.0)
        total -= integrate_adaptive([&](double t) { return 1.0 - h.eval(surv(t)); }, lo,
                                    0.0, tol, 2000000)
                     .value;
    return total;
}

inline double direct_dmeasure(const Distortion& h, const Marginal& m,
                              double tol = 1e-9) {
    const double lo =
        std::isfinite(m.support_lo()) ? m.support_lo() : m.quantile(1e-11);
    const double hi =
        std::isfinite(m.support_hi()) ? m.support_hi() : m.quantile_comp(1e-11);
    return direct_tail_risk([&](double t) { return m.sf(t); }, h, lo, hi, tol);
}

// Conditional law of Y given U > u_g, expressed through the copula's joint
// tail: P(Y > t | U > u_g) = joint_tail_sv(u_g, sf(t)) / (1 - u_g).
inline double direct_cod(const Copula& c, const Marginal& y, double u_g,
                         const Distortion& h, double tol = 1e-9) {
    const double w = 1.0 - u_g;
    auto surv = [&](double t) { return c.joint_tail_sv(u_g, y.sf(t)) / w; };
    // P(Y > t | U > u_g) <= sf(t)/w and P(Y <= t | U > u_g) <= cdf(t)/w, so
    // cutting both marginal tails at mass 1e-11 * w bounds the omitted part.
    const double lo =
        std::isfinite(y.support_lo()) ? y.support_lo() : y.quantile(1e-11 * w);
    const double hi =
        std::isfinite(y.support_hi()) ? y.support_hi() : y.quantile_comp(1e-11 * w);
    return direct_tail_risk(surv, h, lo, hi, tol);
}

} // namespace corisk::testsupport
