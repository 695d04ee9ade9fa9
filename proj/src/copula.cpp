#include "corisk/copula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "corisk/errors.hpp"
#include "corisk/numerics.hpp"
#include "parse_util.hpp"

namespace corisk {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_u(double u) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::invalid_argument("conditioning level u must lie in [0,1)");
}

// For the Gumbel generator: T(a,b) = (a^θ + b^θ)^{1/θ} and the differences
// T - a, T - b computed without cancellation (needed when one argument is
// orders of magnitude below the other).
double gumbel_T_minus(double a, double b, double theta) {
    // returns T - a
    if (a <= 0.0) return b;
    if (b <= 0.0) return 0.0;
    if (a >= b)
        return a * std::expm1(std::log1p(std::pow(b / a, theta)) / theta);
    const double T = b * std::exp(std::log1p(std::pow(a / b, theta)) / theta);
    return T - a;
}

} // namespace

Copula Copula::gumbel(double theta) {
    require(theta >= 1.0 && std::isfinite(theta), "gumbel: theta must be >= 1");
    return {CopulaFamily::gumbel, theta};
}
Copula Copula::fgm(double alpha) {
    require(alpha >= -1.0 && alpha <= 1.0, "fgm: alpha must lie in [-1,1]");
    return {CopulaFamily::fgm, alpha};
}
Copula Copula::independence() { return {CopulaFamily::independence, 0.0}; }
Copula Copula::comonotonic() { return {CopulaFamily::comonotonic, 0.0}; }

double Copula::cdf(double u, double v) const {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("copula cdf: arguments must lie in [0,1]");
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    switch (family_) {
    case CopulaFamily::gumbel: {
        const double a = -std::log(u), b = -std::log(v);
        return u * std::exp(-gumbel_T_minus(a, b, param_));
    }
    case CopulaFamily::fgm:
        return u * v * (1.0 + param_ * (1.0 - u) * (1.0 - v));
    case CopulaFamily::independence:
        return u * v;
    case CopulaFamily::comonotonic:
        return std::min(u, v);
    }
    return 0.0;
}

double Copula::joint_tail_sv(double u, double sv) const {
    check_u(u);
    if (!(sv >= 0.0 && sv <= 1.0))
        throw std::invalid_argument("joint_tail_sv: sv must lie in [0,1]");
    if (sv == 0.0) return 0.0;
    if (u == 0.0) return sv;
    if (sv == 1.0) return 1.0 - u;
    switch (family_) {
    case CopulaFamily::gumbel: {
        const double a = -std::log(u);
        const double b = -std::log1p(-sv);
        // P(U>u,V>v) = sv - (u - C); u - C = u(1 - e^{-(T-a)})
        const double u_minus_C = u * (-std::expm1(-gumbel_T_minus(a, b, param_)));
        return std::max(0.0, sv - u_minus_C);
    }
    case CopulaFamily::fgm:
        return (1.0 - u) * sv * (1.0 + param_ * u * (1.0 - sv));
    case CopulaFamily::independence:
        return (1.0 - u) * sv;
    case CopulaFamily::comonotonic:
        return std::min(1.0 - u, sv);
    }
    return 0.0;
}

double Copula::cond_tail_cdf(double u, double v) const {
    check_u(u);
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("cond_tail_cdf: v must lie in [0,1]");
    if (v == 0.0) return 0.0;
    if (v == 1.0) return 1.0;
    switch (family_) {
    case CopulaFamily::gumbel: {
        const double a = -std::log(u), b = -std::log(v);
        // v - C = v(1 - e^{-(T-b)})
        const double v_minus_C = v * (-std::expm1(-gumbel_T_minus(b, a, param_)));
        return std::min(1.0, v_minus_C / (1.0 - u));
    }
    case CopulaFamily::fgm:
        return v * (1.0 - param_ * u * (1.0 - v));
    case CopulaFamily::independence:
        return v;
    case CopulaFamily::comonotonic:
        return v <= u ? 0.0 : (v - u) / (1.0 - u);
    }
    return 0.0;
}

double Copula::cond_tail_sf(double u, double sv) const {
    return joint_tail_sv(u, sv) / (1.0 - u);
}

double Copula::cond_tail_quantile(double u, double p) const {
    check_u(u);
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("cond_tail_quantile: p must lie in (0,1)");
    switch (family_) {
    case CopulaFamily::gumbel: {
        // solve cond_tail_cdf(u, e^t) = p in t = ln v (monotone increasing)
        auto f = [&](double t) {
            const double c = cond_tail_cdf(u, std::exp(t));
            return std::log(std::max(c, 1e-310)) - std::log(p);
        };
        double hi = 0.0, fhi = f(hi); // v = 1: cdf = 1 >= p
        double lo = std::log(p) + std::log1p(-u), flo = f(lo);
        for (int i = 0; i < 60 && flo > 0.0; ++i) {
            lo -= 5.0;
            if (lo < -745.0) { lo = -745.0; flo = f(lo); break; }
            flo = f(lo);
        }
        if (flo > 0.0) return std::exp(lo);
        const double t = brent_root(f, lo, hi, flo, fhi, 1e-12, 0.0);
        return std::exp(t);
    }
    case CopulaFamily::fgm: {
        const double A = param_ * u;
        if (std::fabs(A) < 1e-12) return p;
        // A v^2 + (1-A) v - p = 0, stable root in [0,1]
        const double disc = (1.0 - A) * (1.0 - A) + 4.0 * A * p;
        return 2.0 * p / ((1.0 - A) + std::sqrt(disc));
    }
    case CopulaFamily::independence:
        return p;
    case CopulaFamily::comonotonic:
        return u + (1.0 - u) * p;
    }
    return p;
}

double Copula::cond_tail_sf_inv(double u, double sp) const {
    check_u(u);
    if (!(sp > 0.0 && sp < 1.0))
        throw std::invalid_argument("cond_tail_sf_inv: sp must lie in (0,1)");
    switch (family_) {
    case CopulaFamily::gumbel: {
        // solve cond_tail_sf(u, e^t) = sp in t = ln sv (monotone increasing)
        auto f = [&](double t) {
            const double s = cond_tail_sf(u, std::exp(t));
            return std::log(std::max(s, 1e-310)) - std::log(sp);
        };
        double hi = 0.0, fhi = f(hi); // sv = 1: sf = 1 >= sp
        double lo = std::log(sp) + std::log1p(-u), flo = f(lo);
        for (int i = 0; i < 60 && flo > 0.0; ++i) {
            lo -= 5.0;
            if (lo < -745.0) { lo = -745.0; flo = f(lo); break; }
            flo = f(lo);
        }
        if (flo > 0.0) return std::exp(lo);
        const double t = brent_root(f, lo, hi, flo, fhi, 1e-12, 0.0);
        return std::exp(t);
    }
    case CopulaFamily::fgm: {
        const double A = param_ * u;
        if (std::fabs(A) < 1e-12) return sp;
        // A sv^2 - (1+A) sv + sp = 0, stable root in [0,1]
        const double disc = (1.0 + A) * (1.0 + A) - 4.0 * A * sp;
        return 2.0 * sp / ((1.0 + A) + std::sqrt(disc));
    }
    case CopulaFamily::independence:
        return sp;
    case CopulaFamily::comonotonic:
        return sp * (1.0 - u);
    }
    return sp;
}

std::string Copula::to_string() const {
    char buf[64];
    switch (family_) {
    case CopulaFamily::gumbel:
        std::snprintf(buf, sizeof(buf), "gumbel:%.12g", param_);
        return buf;
    case CopulaFamily::fgm:
        std::snprintf(buf, sizeof(buf), "fgm:%.12g", param_);
        return buf;
    case CopulaFamily::independence:
        return "indep";
    case CopulaFamily::comonotonic:
        return "comono";
    }
    return "";
}

Copula Copula::parse(std::string_view text) {
    const auto fs = detail::parse_family(text, "copula");
    auto need = [&](std::size_t n) { detail::need_args(fs, n, "copula"); };
    if (fs.name == "gumbel") { need(1); return gumbel(fs.args[0]); }
    if (fs.name == "fgm") { need(1); return fgm(fs.args[0]); }
    if (fs.name == "indep" || fs.name == "independence") { need(0); return independence(); }
    if (fs.name == "comono" || fs.name == "comonotonic") { need(0); return comonotonic(); }
    throw std::invalid_argument("unknown copula '" + std::string(text) + "'");
}

namespace {

std::vector<double> interior_grid(int n) {
    if (n < 2) throw std::invalid_argument("grid_size must be >= 2");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i + 1) / (n + 1);
    return g;
}

struct SlackTracker {
    OrderVerdict v;
    void feed(double slack, double w1, double w2, double lhs, double rhs, double tol) {
        if (slack < v.margin) v.margin = slack;
        if (slack < -tol && !v.first_violation) {
            v.holds = false;
            v.first_violation = Violation{w1, w2, lhs, rhs};
        }
    }
    OrderVerdict finish(double tol) {
        v.holds = v.margin >= -tol;
        return v;
    }
};

} // namespace

OrderVerdict concordance_leq(const Copula& c1, const Copula& c2, int grid_size) {
    constexpr double tol = 1e-12;
    const auto g = interior_grid(grid_size);
    SlackTracker t;
    for (double u : g)
        for (double v : g) {
            const double a = c1.cdf(u, v), b = c2.cdf(u, v);
            t.feed(b - a, u, v, a, b, tol);
        }
    return t.finish(tol);
}

const char* dependence_name(Dependence d) {
    switch (d) {
    case Dependence::PQD: return "PQD";
    case Dependence::NQD: return "NQD";
    case Dependence::RTI_V_in_U: return "RTI";
    case Dependence::RTD_V_in_U: return "RTD";
    case Dependence::SI_V_in_U: return "SI";
    case Dependence::SD_V_in_U: return "SD";
    case Dependence::TP2: return "TP2";
    case Dependence::RR2: return "RR2";
    case Dependence::PDS: return "PDS";
    case Dependence::NDS: return "NDS";
    }
    return "?";
}

Dependence parse_dependence(std::string_view text) {
    std::string s(text);
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (s == "PQD") return Dependence::PQD;
    if (s == "NQD") return Dependence::NQD;
    if (s == "RTI" || s == "RTI_V_IN_U") return Dependence::RTI_V_in_U;
    if (s == "RTD" || s == "RTD_V_IN_U") return Dependence::RTD_V_in_U;
    if (s == "SI" || s == "SI_V_IN_U") return Dependence::SI_V_in_U;
    if (s == "SD" || s == "SD_V_IN_U") return Dependence::SD_V_in_U;
    if (s == "TP2") return Dependence::TP2;
    if (s == "RR2") return Dependence::RR2;
    if (s == "PDS") return Dependence::PDS;
    if (s == "NDS") return Dependence::NDS;
    throw std::invalid_argument("unknown dependence notion '" + std::string(text) + "'");
}

namespace {

constexpr double kExactTol = 1e-12; // closed-form comparisons
constexpr double kDiffTol = 1e-8;   // central-difference comparisons

// Quadrant comparison: sign * (C - uv) >= -tol.
OrderVerdict check_quadrant(const Copula& c, int n, double sign) {
    const auto g = interior_grid(n);
    SlackTracker t;
    for (double u : g)
        for (double v : g) {
            const double cuv = c.cdf(u, v);
            t.feed(sign * (cuv - u * v), u, v, cuv, u * v, kExactTol);
        }
    return t.finish(kExactTol);
}

// Tail monotonicity: sign * d/du P(V>v | U>u) >= 0 via grid differences of the
// exact conditional tail survival.
OrderVerdict check_tail_monotone(const Copula& c, int n, double sign) {
    const auto g = interior_grid(n);
    SlackTracker t;
    for (double v : g) {
        const double sv = 1.0 - v;
        double prev = c.cond_tail_sf(g[0], sv);
        for (std::size_t i = 1; i < g.size(); ++i) {
            const double cur = c.cond_tail_sf(g[i], sv);
            t.feed(sign * (cur - prev), g[i], v, prev, cur, kExactTol);
            prev = cur;
        }
    }
    return t.finish(kExactTol);
}

// Stochastic monotonicity via central differences: P(V<=v | U=u) ~ dC/du must
// move opposite to the required direction of P(V>v | U=u).
OrderVerdict check_stoch_monotone(const Copula& c, int n, double sign, bool in_u) {
    const auto g = interior_grid(n);
    const double h = 1.0 / (4.0 * n);
    SlackTracker t;
    auto dcond = [&](double u, double v) {
        return in_u ? (c.cdf(u + h, v) - c.cdf(u - h, v)) / (2.0 * h)
                    : (c.cdf(v, u + h) - c.cdf(v, u - h)) / (2.0 * h);
    };
    for (double v : g) {
        double prev = dcond(g[0], v);
        for (std::size_t i = 1; i < g.size(); ++i) {
            const double cur = dcond(g[i], v);
            // P(V>v|U=u) nondecreasing  <=>  dC/du nonincreasing
            t.feed(sign * (prev - cur), g[i], v, prev, cur, kDiffTol);
            prev = cur;
        }
    }
    return t.finish(kDiffTol);
}

// Adjacent-cell log-supermodularity of C; adjacent cells compose, so this
// implies the property for every grid rectangle.
OrderVerdict check_tp2(const Copula& c, int n, double sign) {
    const auto g = interior_grid(n);
    SlackTracker t;
    std::vector<double> row(g.size()), next(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) row[j] = c.cdf(g[0], g[j]);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) next[j] = c.cdf(g[i + 1], g[j]);
        for (std::size_t j = 0; j + 1 < g.size(); ++j) {
            const double det = row[j] * next[j + 1] - row[j + 1] * next[j];
            t.feed(sign * det, g[i], g[j], row[j] * next[j + 1], row[j + 1] * next[j],
                   kExactTol);
        }
        row.swap(next);
    }
    return t.finish(kExactTol);
}

OrderVerdict combine(OrderVerdict a, const OrderVerdict& b) {
    if (b.margin < a.margin) a.margin = b.margin;
    if (!b.holds) {
        a.holds = false;
        if (!a.first_violation) a.first_violation = b.first_violation;
    }
    return a;
}

} // namespace

OrderVerdict check_dependence(const Copula& c, Dependence notion, int grid_size) {
    switch (notion) {
    case Dependence::PQD:
        return check_quadrant(c, grid_size, +1.0);
    case Dependence::NQD:
        return check_quadrant(c, grid_size, -1.0);
    case Dependence::RTI_V_in_U:
        return check_tail_monotone(c, grid_size, +1.0);
    case Dependence::RTD_V_in_U:
        return check_tail_monotone(c, grid_size, -1.0);
    case Dependence::SI_V_in_U:
        return check_stoch_monotone(c, grid_size, +1.0, true);
    case Dependence::SD_V_in_U:
        return check_stoch_monotone(c, grid_size, -1.0, true);
    case Dependence::TP2:
        return check_tp2(c, grid_size, +1.0);
    case Dependence::RR2:
        return check_tp2(c, grid_size, -1.0);
    case Dependence::PDS:
        return combine(check_stoch_monotone(c, grid_size, +1.0, true),
                       check_stoch_monotone(c, grid_size, +1.0, false));
    case Dependence::NDS:
        return combine(check_stoch_monotone(c, grid_size, -1.0, true),
                       check_stoch_monotone(c, grid_size, -1.0, false));
    }
    throw std::invalid_argument("unknown dependence notion");
}

} // namespace corisk
