#pragma once

namespace corisk {

// Standard normal density / distribution / survival / quantile.
double norm_pdf(double x);
double norm_cdf(double x);
double norm_sf(double x);
// Inverse of norm_cdf, accurate to full double precision for p away from the
// extremes and to ~1e-9 relative in the far tails (p down to ~1e-308).
double norm_quantile(double p);

// Regularized incomplete gamma functions P(a,x) (lower) and Q(a,x) = 1 - P
// (upper), a > 0, x >= 0, plus log-space variants usable when the value
// underflows (log_gamma_q(a,x) accurate for x large, log_gamma_p for x small).
double gamma_p(double a, double x);
double gamma_q(double a, double x);
double log_gamma_p(double a, double x);
double log_gamma_q(double a, double x);

// Inverses: gamma_inv_cdf solves P(a,x) = p, gamma_inv_sf solves Q(a,x) = s.
// Both work in log(x) space and switch to log-probability comparisons for
// arguments below 1e-12, so tail masses down to ~1e-300 resolve accurately.
double gamma_inv_cdf(double a, double p);
double gamma_inv_sf(double a, double s);

} // namespace corisk
