#include "corisk/riskcore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "corisk/errors.hpp"
#include "corisk/numerics.hpp"

namespace corisk {

namespace {

constexpr double kCrossCheckTol = 1e-6; // max allowed gap between the two routes
constexpr double kDegenerate = 1.0 - 1e-10;

double floor_pos(double x) { return x > 1e-308 ? x : 1e-308; }

// Definition-route evaluation: D_g[X] = int_0^inf g(sf(t)) dt
//                                     - int_{-inf}^0 (1 - g(sf(t))) dt,
// each piece mapped onto (0,1) via t = w/(1-w), split at distortion
// breakpoints and finite support edges.
QuadResult tail_integral_route(const Distortion& g, const Marginal& m, double abs_tol) {
    std::vector<double> pos_breaks, neg_breaks;
    auto add_break = [&](double t) {
        if (!std::isfinite(t)) return;
        if (t > 0.0)
            pos_breaks.push_back(t / (1.0 + t));
        else if (t < 0.0)
            neg_breaks.push_back(-t / (1.0 - t));
    };
    for (double pb : g.breakpoints()) add_break(m.quantile_comp(pb));
    add_break(m.support_lo());
    add_break(m.support_hi());

    QuadResult total;
    if (m.support_hi() > 0.0) {
        auto f = [&](double w) {
            const double om = 1.0 - w;
            const double t = w / om;
            return g.eval(m.sf(t)) / (om * om);
        };
        QuadResult r = integrate_split(f, 0.0, 1.0, pos_breaks, abs_tol);
        total.value += r.value;
        total.err += r.err;
        total.evals += r.evals;
    }
    if (m.support_lo() < 0.0) {
        auto f = [&](double w) {
            const double om = 1.0 - w;
            const double t = -w / om;
            return (1.0 - g.eval(m.sf(t))) / (om * om);
        };
        QuadResult r = integrate_split(f, 0.0, 1.0, neg_breaks, abs_tol);
        total.value -= r.value;
        total.err += r.err;
        total.evals += r.evals;
    }
    return total;
}

void check_level(double u, const char* what) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1)");
    if (u >= kDegenerate)
        throw degenerate_conditioning(std::string(what) +
                                      ": conditioning event has vanishing mass");
}

// Quantile of the conditional law F_{V|U>u} composed with the Y quantile,
// evaluated stably on either side of the median: the lower branch solves for
// the v-coordinate, the upper branch for its survival mass.
struct CondQuantile {
    const Copula& c;
    const Marginal& y;
    double u;
    mutable long rootfinds = 0;

    double operator()(double p, double sp) const {
        ++rootfinds;
        if (u == 0.0) return y.quantile_ps(floor_pos(p), floor_pos(sp));
        if (p <= 0.5) {
            const double v = c.cond_tail_quantile(u, floor_pos(p));
            return y.quantile_ps(v, 1.0 - v);
        }
        const double sv = c.cond_tail_sf_inv(u, floor_pos(sp));
        return y.quantile_ps(1.0 - sv, sv);
    }
};

} // namespace

RiskResult distortion_measure(const Distortion& g, const Marginal& m, double abs_tol) {
    // quantile route against the dual measure (primary)
    const StieltjesMeasure meas = g.dual_measure();
    QuadResult qr = meas.integrate(
        [&](double p, double sp) { return m.quantile_ps(floor_pos(p), floor_pos(sp)); },
        abs_tol);

    // independent definition route (cross-check)
    QuadResult tr = tail_integral_route(g, m, std::min(abs_tol, 2e-7));

    const double gap = std::fabs(qr.value - tr.value);
    if (!(gap <= kCrossCheckTol + qr.err + tr.err))
        throw numerical_error("distortion_measure: evaluation routes disagree (" +
                              std::to_string(qr.value) + " vs " +
                              std::to_string(tr.value) + ")");

    RiskResult out;
    out.value = qr.value;
    out.err_estimate = qr.err + gap;
    out.n_rootfinds = qr.evals;
    return out;
}

double threshold_quantile(const Distortion& g, const Marginal& m) {
    return m.cdf(distortion_measure(g, m).value);
}

RiskResult cod_at(const BivariateModel& model, double u_g, const Distortion& h,
                  double abs_tol) {
    check_level(u_g, "cod_at: u_g");
    const CondQuantile cq{model.copula, model.y, u_g};
    const StieltjesMeasure meas = h.dual_measure();
    QuadResult r =
        meas.integrate([&](double p, double sp) { return cq(p, sp); }, abs_tol);
    RiskResult out;
    out.value = r.value;
    out.u_g = u_g;
    out.err_estimate = r.err;
    out.n_rootfinds = cq.rootfinds;
    return out;
}

RiskResult cod(const BivariateModel& model, const Distortion& g, const Distortion& h,
               double abs_tol) {
    const double u = threshold_quantile(g, model.x);
    if (u >= kDegenerate)
        throw degenerate_conditioning("cod: threshold quantile too close to 1");
    return cod_at(model, u, h, abs_tol);
}

RiskResult delta_cod_at(const BivariateModel& model, double u_g, const Distortion& h,
                        double abs_tol) {
    check_level(u_g, "delta_cod_at: u_g");
    const CondQuantile cq{model.copula, model.y, u_g};
    const StieltjesMeasure meas = h.dual_measure();
    auto base = [&](double p, double sp) {
        return model.y.quantile_ps(floor_pos(p), floor_pos(sp));
    };
    // single integral of the difference (no cancellation between two large
    // separately-computed terms)
    QuadResult r = meas.integrate(
        [&](double p, double sp) { return cq(p, sp) - base(p, sp); }, abs_tol);
    QuadResult rb = meas.integrate(base, abs_tol);
    RiskResult out;
    out.value = r.value;
    out.u_g = u_g;
    out.err_estimate = r.err;
    out.n_rootfinds = cq.rootfinds;
    out.term2 = rb.value;
    out.term1 = r.value + rb.value;
    return out;
}

RiskResult delta_cod(const BivariateModel& model, const Distortion& g,
                     const Distortion& h, double abs_tol) {
    const double u = threshold_quantile(g, model.x);
    if (u >= kDegenerate)
        throw degenerate_conditioning("delta_cod: threshold quantile too close to 1");
    return delta_cod_at(model, u, h, abs_tol);
}

RiskResult delta_cod_type2_at(const BivariateModel& model, double u_g, double u_g2,
                              const Distortion& h, double abs_tol) {
    check_level(u_g, "delta_cod_type2_at: u_g");
    check_level(u_g2, "delta_cod_type2_at: u_g2");
    const CondQuantile cq1{model.copula, model.y, u_g};
    const CondQuantile cq2{model.copula, model.y, u_g2};
    const StieltjesMeasure meas = h.dual_measure();
    QuadResult r = meas.integrate(
        [&](double p, double sp) { return cq1(p, sp) - cq2(p, sp); }, abs_tol);
    QuadResult r2 =
        meas.integrate([&](double p, double sp) { return cq2(p, sp); }, abs_tol);
    RiskResult out;
    out.value = r.value;
    out.u_g = u_g;
    out.u_g2 = u_g2;
    out.err_estimate = r.err;
    out.n_rootfinds = cq1.rootfinds + cq2.rootfinds;
    out.term2 = r2.value;
    out.term1 = r.value + r2.value;
    return out;
}

RiskResult delta_cod_type2(const BivariateModel& model, const Distortion& g,
                           const Distortion& g2, const Distortion& h, double abs_tol) {
    const double u1 = threshold_quantile(g, model.x);
    const double u2 = threshold_quantile(g2, model.x);
    if (u1 >= kDegenerate || u2 >= kDegenerate)
        throw degenerate_conditioning("delta_cod_type2: threshold quantile too close to 1");
    return delta_cod_type2_at(model, u1, u2, h, abs_tol);
}

ClassicMeasures classic_measures(const BivariateModel& model, double alpha, double beta,
                                 double abs_tol) {
    const Distortion g = Distortion::var(alpha);
    ClassicMeasures out{cod(model, g, Distortion::var(beta), abs_tol),
                        cod(model, g, Distortion::es(beta), abs_tol),
                        cod(model, g, Distortion::identity(), abs_tol)};
    return out;
}

double psi_transform(const Copula& c, double u_g, const Distortion& h, double t) {
    if (!h.is_continuous())
        throw std::domain_error("psi_transform: distortion must be continuous");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("psi_transform: t must lie in [0,1]");
    check_level(u_g, "psi_transform: u_g");
    const Distortion hbar = h.dual();
    const StieltjesMeasure meas = h.dual_measure();
    if (meas.segments.size() != 1 || !meas.atoms.empty())
        throw std::domain_error("psi_transform: distortion has no continuous inverse");
    const MeasureSegment& seg = meas.segments.front();
    double v;
    if (t <= 0.0)
        v = seg.lo;
    else if (t >= 1.0)
        v = seg.hi;
    else
        v = seg.p_of_w(t * seg.mass);
    const double a = c.cond_tail_cdf(u_g, std::min(std::max(v, 0.0), 1.0));
    return hbar.eval(a);
}

OrderVerdict psi_convexity(const Copula& c, double u_g, const Distortion& h,
                           int grid_size) {
    if (grid_size < 3)
        throw std::invalid_argument("psi_convexity: grid_size must be >= 3");
    constexpr double tol = 1e-9;
    std::vector<double> psi(grid_size);
    for (int i = 0; i < grid_size; ++i)
        psi[i] = psi_transform(c, u_g, h, static_cast<double>(i) / (grid_size - 1));
    OrderVerdict v;
    for (int i = 1; i + 1 < grid_size; ++i) {
        const double d2 = psi[i + 1] + psi[i - 1] - 2.0 * psi[i];
        if (d2 < v.margin) v.margin = d2;
        if (d2 < -tol && !v.first_violation)
            v.first_violation =
                Violation{static_cast<double>(i) / (grid_size - 1),
                          std::numeric_limits<double>::quiet_NaN(), psi[i], d2};
    }
    v.holds = v.margin >= -tol;
    return v;
}

namespace {

std::size_t marginal_extra_tokens(const std::string& name) {
    if (name == "normal" || name == "gamma" || name == "weibull" || name == "uniform")
        return 1; // second parameter arrives as its own comma token
    if (name == "exp" || name == "exponential") return 0;
    throw std::invalid_argument("unknown marginal '" + name + "'");
}

} // namespace

BivariateModel BivariateModel::parse(std::string_view text) {
    std::vector<std::string> toks;
    std::size_t pos = 0;
    const std::string s(text);
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        toks.push_back(comma == std::string::npos ? s.substr(pos)
                                                  : s.substr(pos, comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    std::size_t idx = 0;
    auto take = [&](std::size_t extra) {
        std::string out = toks[idx];
        for (std::size_t k = 1; k <= extra; ++k) {
            if (idx + k >= toks.size())
                throw std::invalid_argument("model: truncated specification '" + s + "'");
            out += "," + toks[idx + k];
        }
        idx += 1 + extra;
        return out;
    };
    if (toks.empty() || toks[0].empty())
        throw std::invalid_argument("model: empty specification");

    const Copula c = Copula::parse(take(0));

    auto name_of = [](const std::string& tok) {
        return tok.substr(0, tok.find(':'));
    };
    if (idx >= toks.size())
        throw std::invalid_argument("model: missing marginals in '" + s + "'");
    const Marginal mx = Marginal::parse(take(marginal_extra_tokens(name_of(toks[idx]))));
    if (idx >= toks.size())
        throw std::invalid_argument("model: missing second marginal in '" + s + "'");
    const Marginal my = Marginal::parse(take(marginal_extra_tokens(name_of(toks[idx]))));
    if (idx != toks.size())
        throw std::invalid_argument("model: trailing tokens in '" + s + "'");
    return {c, mx, my};
}

std::string BivariateModel::to_string() const {
    return copula.to_string() + "," + x.to_string() + "," + y.to_string();
}

} // namespace corisk
