#pragma once
#include <string>
#include <string_view>

namespace corisk {

enum class MarginalFamily { normal, gamma, weibull, exponential, uniform };

// Univariate continuous distribution with closed-form survival machinery.
// quantile_comp(s) evaluates F^{-1}(1-s) directly from the survival mass s, so
// upper-tail levels down to s ~ 1e-300 resolve without forming 1-s.
class Marginal {
  public:
    static Marginal normal(double mu, double sigma);
    static Marginal gamma(double shape, double rate);
    static Marginal weibull(double shape, double scale);
    static Marginal exponential(double rate);
    static Marginal uniform(double lo, double hi);
    // "normal:0,1", "gamma:0.5,1", "weibull:1,2", "exp:1", "uniform:0,1"
    static Marginal parse(std::string_view text);

    double pdf(double x) const;
    double cdf(double x) const;
    double sf(double x) const;
    double quantile(double p) const;      // p in (0,1)
    double quantile_comp(double s) const; // F^{-1}(1-s), s in (0,1)
    // Quantile at p given also sp = 1-p computed exactly by the caller; picks
    // whichever coordinate keeps full precision.
    double quantile_ps(double p, double sp) const;
    double mean() const;
    // Integral of sf over (F^{-1}(u), support_hi]; u = 0 gives mean - support_lo.
    double integrated_tail(double u) const;
    bool is_dfr() const; // decreasing failure rate (analytic per family)
    double support_lo() const;
    double support_hi() const;

    MarginalFamily family() const { return family_; }
    double param1() const { return a_; }
    double param2() const { return b_; }
    std::string to_string() const;

  private:
    Marginal(MarginalFamily f, double a, double b) : family_(f), a_(a), b_(b) {}
    MarginalFamily family_;
    double a_, b_; // meaning depends on family
};

} // namespace corisk
