#include "corisk/marginal.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "corisk/special.hpp"
#include "parse_util.hpp"

namespace corisk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_prob(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in (0,1)");
}
} // namespace

Marginal Marginal::normal(double mu, double sigma) {
    require(std::isfinite(mu) && sigma > 0.0, "normal: need finite mu, sigma > 0");
    return {MarginalFamily::normal, mu, sigma};
}
Marginal Marginal::gamma(double shape, double rate) {
    require(shape > 0.0 && rate > 0.0, "gamma: need shape > 0, rate > 0");
    return {MarginalFamily::gamma, shape, rate};
}
Marginal Marginal::weibull(double shape, double scale) {
    require(shape > 0.0 && scale > 0.0, "weibull: need shape > 0, scale > 0");
    return {MarginalFamily::weibull, shape, scale};
}
Marginal Marginal::exponential(double rate) {
    require(rate > 0.0, "exponential: need rate > 0");
    return {MarginalFamily::exponential, rate, 0.0};
}
Marginal Marginal::uniform(double lo, double hi) {
    require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
            "uniform: need finite lo < hi");
    return {MarginalFamily::uniform, lo, hi};
}

double Marginal::pdf(double x) const {
    switch (family_) {
    case MarginalFamily::normal:
        return norm_pdf((x - a_) / b_) / b_;
    case MarginalFamily::gamma: {
        if (x < 0.0) return 0.0;
        if (x == 0.0) return a_ < 1.0 ? kInf : (a_ == 1.0 ? b_ : 0.0);
        return std::exp((a_ - 1.0) * std::log(b_ * x) - b_ * x + std::log(b_) -
                        std::lgamma(a_));
    }
    case MarginalFamily::weibull: {
        if (x < 0.0) return 0.0;
        if (x == 0.0) return a_ < 1.0 ? kInf : (a_ == 1.0 ? 1.0 / b_ : 0.0);
        const double y = std::pow(x / b_, a_);
        return (a_ / b_) * std::pow(x / b_, a_ - 1.0) * std::exp(-y);
    }
    case MarginalFamily::exponential:
        return x < 0.0 ? 0.0 : a_ * std::exp(-a_ * x);
    case MarginalFamily::uniform:
        return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
    }
    return 0.0;
}

double Marginal::cdf(double x) const {
    switch (family_) {
    case MarginalFamily::normal:
        return norm_cdf((x - a_) / b_);
    case MarginalFamily::gamma:
        return x <= 0.0 ? 0.0 : gamma_p(a_, b_ * x);
    case MarginalFamily::weibull:
        return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / b_, a_));
    case MarginalFamily::exponential:
        return x <= 0.0 ? 0.0 : -std::expm1(-a_ * x);
    case MarginalFamily::uniform:
        if (x <= a_) return 0.0;
        if (x >= b_) return 1.0;
        return (x - a_) / (b_ - a_);
    }
    return 0.0;
}

double Marginal::sf(double x) const {
    switch (family_) {
    case MarginalFamily::normal:
        return norm_sf((x - a_) / b_);
    case MarginalFamily::gamma:
        return x <= 0.0 ? 1.0 : gamma_q(a_, b_ * x);
    case MarginalFamily::weibull:
        return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / b_, a_));
    case MarginalFamily::exponential:
        return x <= 0.0 ? 1.0 : std::exp(-a_ * x);
    case MarginalFamily::uniform:
        if (x <= a_) return 1.0;
        if (x >= b_) return 0.0;
        return (b_ - x) / (b_ - a_);
    }
    return 0.0;
}

double Marginal::quantile(double p) const {
    check_prob(p, "quantile level");
    switch (family_) {
    case MarginalFamily::normal:
        return a_ + b_ * norm_quantile(p);
    case MarginalFamily::gamma:
        return gamma_inv_cdf(a_, p) / b_;
    case MarginalFamily::weibull:
        return b_ * std::pow(-std::log1p(-p), 1.0 / a_);
    case MarginalFamily::exponential:
        return -std::log1p(-p) / a_;
    case MarginalFamily::uniform:
        return a_ + (b_ - a_) * p;
    }
    return 0.0;
}

double Marginal::quantile_comp(double s) const {
    check_prob(s, "survival level");
    switch (family_) {
    case MarginalFamily::normal:
        return a_ - b_ * norm_quantile(s);
    case MarginalFamily::gamma:
        return gamma_inv_sf(a_, s) / b_;
    case MarginalFamily::weibull:
        return b_ * std::pow(-std::log(s), 1.0 / a_);
    case MarginalFamily::exponential:
        return -std::log(s) / a_;
    case MarginalFamily::uniform:
        return b_ - (b_ - a_) * s;
    }
    return 0.0;
}

double Marginal::quantile_ps(double p, double sp) const {
    // Floor against exact-zero coordinates arising from underflow at the very
    // deepest quadrature subdivisions; the associated mass is negligible.
    if (p <= 0.5) return quantile(p > 1e-308 ? p : 1e-308);
    return quantile_comp(sp > 1e-308 ? sp : 1e-308);
}

double Marginal::mean() const {
    switch (family_) {
    case MarginalFamily::normal:
        return a_;
    case MarginalFamily::gamma:
        return a_ / b_;
    case MarginalFamily::weibull:
        return b_ * std::tgamma(1.0 + 1.0 / a_);
    case MarginalFamily::exponential:
        return 1.0 / a_;
    case MarginalFamily::uniform:
        return 0.5 * (a_ + b_);
    }
    return 0.0;
}

double Marginal::integrated_tail(double u) const {
    if (!(u >= 0.0 && u < 1.0))
        throw std::invalid_argument("integrated_tail: u must lie in [0,1)");
    switch (family_) {
    case MarginalFamily::normal: {
        if (u == 0.0)
            throw std::domain_error("integrated_tail diverges at u=0 for unbounded-below support");
        const double z = norm_quantile(u);
        return b_ * (norm_pdf(z) - z * (1.0 - u));
    }
    case MarginalFamily::gamma: {
        const double x = u == 0.0 ? 0.0 : gamma_inv_cdf(a_, u);
        return (a_ * gamma_q(a_ + 1.0, x) - x * gamma_q(a_, x)) / b_;
    }
    case MarginalFamily::weibull: {
        const double y = -std::log1p(-u); // (x/scale)^shape at the u-quantile
        return b_ * std::tgamma(1.0 + 1.0 / a_) * gamma_q(1.0 / a_, y);
    }
    case MarginalFamily::exponential:
        return (1.0 - u) / a_;
    case MarginalFamily::uniform:
        return 0.5 * (b_ - a_) * (1.0 - u) * (1.0 - u);
    }
    return 0.0;
}

bool Marginal::is_dfr() const {
    switch (family_) {
    case MarginalFamily::normal:
        return false;
    case MarginalFamily::gamma:
        return a_ <= 1.0;
    case MarginalFamily::weibull:
        return a_ <= 1.0;
    case MarginalFamily::exponential:
        return true;
    case MarginalFamily::uniform:
        return false;
    }
    return false;
}

double Marginal::support_lo() const {
    switch (family_) {
    case MarginalFamily::normal:
        return -kInf;
    case MarginalFamily::uniform:
        return a_;
    default:
        return 0.0;
    }
}

double Marginal::support_hi() const {
    return family_ == MarginalFamily::uniform ? b_ : kInf;
}

std::string Marginal::to_string() const {
    char buf[80];
    switch (family_) {
    case MarginalFamily::normal:
        std::snprintf(buf, sizeof(buf), "normal:%.12g,%.12g", a_, b_);
        break;
    case MarginalFamily::gamma:
        std::snprintf(buf, sizeof(buf), "gamma:%.12g,%.12g", a_, b_);
        break;
    case MarginalFamily::weibull:
        std::snprintf(buf, sizeof(buf), "weibull:%.12g,%.12g", a_, b_);
        break;
    case MarginalFamily::exponential:
        std::snprintf(buf, sizeof(buf), "exp:%.12g", a_);
        break;
    case MarginalFamily::uniform:
        std::snprintf(buf, sizeof(buf), "uniform:%.12g,%.12g", a_, b_);
        break;
    }
    return buf;
}

Marginal Marginal::parse(std::string_view text) {
    const auto fs = detail::parse_family(text, "marginal");
    auto need = [&](std::size_t n) { detail::need_args(fs, n, "marginal"); };
    const std::string& name = fs.name;
    const auto& args = fs.args;
    if (name == "normal") { need(2); return normal(args[0], args[1]); }
    if (name == "gamma") { need(2); return gamma(args[0], args[1]); }
    if (name == "weibull") { need(2); return weibull(args[0], args[1]); }
    if (name == "exp" || name == "exponential") { need(1); return exponential(args[0]); }
    if (name == "uniform") { need(2); return uniform(args[0], args[1]); }
    throw std::invalid_argument("unknown marginal '" + std::string(text) + "'");
}

} // namespace corisk
