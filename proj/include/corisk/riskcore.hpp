#pragma once
#include <limits>
#include <string_view>

#include "corisk/copula.hpp"
#include "corisk/distortion.hpp"
#include "corisk/marginal.hpp"
#include "corisk/verdict.hpp"

namespace corisk {

struct BivariateModel {
    Copula copula;
    Marginal x;
    Marginal y;
    // All built-in copula families are exchangeable, so swapping the roles of
    // the marginals is exact.
    BivariateModel swapped() const { return {copula, y, x}; }
    // "gumbel:2,normal:0,1,normal:0,1" (copula, X marginal, Y marginal)
    static BivariateModel parse(std::string_view text);
    std::string to_string() const;
};

struct RiskResult {
    double value = 0.0;
    // conditioning level(s) used; NaN when not applicable
    double u_g = std::numeric_limits<double>::quiet_NaN();
    double u_g2 = std::numeric_limits<double>::quiet_NaN();
    double err_estimate = 0.0; // quadrature error + cross-route gap
    long n_rootfinds = 0;      // conditional-inversion evaluations
    // The two integral terms whose difference is `value` (contribution
    // measures only; NaN otherwise).
    double term1 = std::numeric_limits<double>::quiet_NaN();
    double term2 = std::numeric_limits<double>::quiet_NaN();
};

// Distortion risk functional of a marginal, evaluated by two independent
// routes (tail-integral definition and quantile integral against the dual
// measure); throws numerical_error if they disagree beyond 1e-6.
RiskResult distortion_measure(const Distortion& g, const Marginal& m,
                              double abs_tol = 1e-8);

// F_X(D_g[X]): the conditioning level induced by g on X.
double threshold_quantile(const Distortion& g, const Marginal& m);

// Conditional distortion risk of Y given X exceeding its g-threshold.
RiskResult cod(const BivariateModel& model, const Distortion& g, const Distortion& h,
               double abs_tol = 1e-8);
RiskResult cod_at(const BivariateModel& model, double u_g, const Distortion& h,
                  double abs_tol = 1e-8);

// Type-I contribution: conditional minus unconditional h-risk of Y.
RiskResult delta_cod(const BivariateModel& model, const Distortion& g,
                     const Distortion& h, double abs_tol = 1e-8);
RiskResult delta_cod_at(const BivariateModel& model, double u_g, const Distortion& h,
                        double abs_tol = 1e-8);

// Type-II contribution: conditional h-risk at the g-threshold minus the same
// at the (lower) second threshold.
RiskResult delta_cod_type2(const BivariateModel& model, const Distortion& g,
                           const Distortion& g2, const Distortion& h,
                           double abs_tol = 1e-8);
RiskResult delta_cod_type2_at(const BivariateModel& model, double u_g, double u_g2,
                              const Distortion& h, double abs_tol = 1e-8);

struct ClassicMeasures {
    RiskResult covar; // VaR_beta of Y given X > VaR_alpha(X)
    RiskResult coes;  // ES_beta of the same conditional law
    RiskResult mes;   // mean of the same conditional law
};
ClassicMeasures classic_measures(const BivariateModel& model, double alpha, double beta,
                                 double abs_tol = 1e-8);

// Distortion-transformed conditional tail cdf: Psi(t) = hbar(A(hbar^{-1}(t)))
// with A(v) = cond_tail_cdf(u_g, v) and hbar the dual of h. Requires a
// continuous h (jump distortions have no usable inverse: std::domain_error).
double psi_transform(const Copula& c, double u_g, const Distortion& h, double t);

// Convexity of Psi on a uniform t-grid via second differences (tol 1e-9).
OrderVerdict psi_convexity(const Copula& c, double u_g, const Distortion& h,
                           int grid_size);

} // namespace corisk
