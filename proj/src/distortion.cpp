#include "corisk/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "corisk/special.hpp"
#include "parse_util.hpp"

namespace corisk {

double StieltjesMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass;
    for (const auto& s : segments) m += s.mass;
    return m;
}

QuadResult StieltjesMeasure::integrate(const std::function<double(double, double)>& q,
                                       double abs_tol) const {
    QuadResult out;
    for (const auto& a : atoms) {
        out.value += a.mass * q(a.location, 1.0 - a.location);
        ++out.evals;
    }
    const double tm = total_mass();
    for (const auto& seg : segments) {
        const double seg_tol = abs_tol * (tm > 0.0 ? seg.mass / tm : 1.0);
        auto f = [&](double w) { return q(seg.p_of_w(w), seg.sp_of_w(w)); };
        QuadResult r = integrate_adaptive(f, 0.0, seg.mass, seg_tol);
        out.value += r.value;
        out.err += r.err;
        out.evals += r.evals;
    }
    return out;
}

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Guard against an exactly-zero survival coordinate at the deepest adaptive
// subdivisions (w rounded to the segment end); the region's mass is << any
// tolerance, only finiteness matters.
double floor_sp(double sp) { return sp > 1e-308 ? sp : 1e-308; }

} // namespace

Distortion Distortion::var(double alpha) {
    require(alpha > 0.0 && alpha < 1.0, "var: level must lie in (0,1)");
    return {DistortionKind::var, alpha, false};
}
Distortion Distortion::es(double beta) {
    require(beta > 0.0 && beta < 1.0, "es: level must lie in (0,1)");
    return {DistortionKind::es, beta, false};
}
Distortion Distortion::power(double gamma) {
    require(gamma > 0.0 && std::isfinite(gamma), "power: exponent must be positive");
    return {DistortionKind::power, gamma, false};
}
Distortion Distortion::dual_power(double k) {
    require(k > 0.0 && std::isfinite(k), "dual_power: exponent must be positive");
    return {DistortionKind::dual_power, k, false};
}
Distortion Distortion::wang(double lambda) {
    require(std::isfinite(lambda), "wang: shift must be finite");
    return {DistortionKind::wang, lambda, false};
}
Distortion Distortion::identity() { return {DistortionKind::identity, 0.0, false}; }

double Distortion::eval(double p) const {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("distortion: argument must lie in [0,1]");
    switch (kind_) {
    case DistortionKind::var:
        // plain: 1{p > 1-alpha} (left-continuous); dual: 1{p >= alpha}
        return dualized_ ? (p >= param_ ? 1.0 : 0.0) : (p > 1.0 - param_ ? 1.0 : 0.0);
    case DistortionKind::es:
        if (!dualized_) return std::min(1.0, p / (1.0 - param_));
        return std::max(0.0, (p - param_) / (1.0 - param_));
    case DistortionKind::power:
        return std::pow(p, param_);
    case DistortionKind::dual_power:
        // 1-(1-p)^k, stable near p=0
        return -std::expm1(param_ * std::log1p(-p));
    case DistortionKind::wang:
        if (p <= 0.0) return 0.0;
        if (p >= 1.0) return 1.0;
        return norm_cdf(norm_quantile(p) + param_);
    case DistortionKind::identity:
        return p;
    }
    return p;
}

Distortion Distortion::dual() const {
    switch (kind_) {
    case DistortionKind::var:
    case DistortionKind::es:
        return {kind_, param_, !dualized_};
    case DistortionKind::power:
        return {DistortionKind::dual_power, param_, false};
    case DistortionKind::dual_power:
        return {DistortionKind::power, param_, false};
    case DistortionKind::wang:
        return {DistortionKind::wang, -param_, false};
    case DistortionKind::identity:
        return *this;
    }
    return *this;
}

Continuity Distortion::continuity() const {
    if (kind_ == DistortionKind::var)
        return dualized_ ? Continuity::right_continuous : Continuity::left_continuous;
    return Continuity::continuous;
}

Shape Distortion::shape() const {
    switch (kind_) {
    case DistortionKind::var:
        return Shape::neither;
    case DistortionKind::es:
        return dualized_ ? Shape::convex : Shape::concave;
    case DistortionKind::power:
        if (param_ == 1.0) return Shape::linear;
        return param_ < 1.0 ? Shape::concave : Shape::convex;
    case DistortionKind::dual_power:
        if (param_ == 1.0) return Shape::linear;
        return param_ > 1.0 ? Shape::concave : Shape::convex;
    case DistortionKind::wang:
        if (param_ == 0.0) return Shape::linear;
        return param_ > 0.0 ? Shape::concave : Shape::convex;
    case DistortionKind::identity:
        return Shape::linear;
    }
    return Shape::neither;
}

bool Distortion::is_concave() const {
    const Shape s = shape();
    return s == Shape::concave || s == Shape::linear;
}
bool Distortion::is_convex() const {
    const Shape s = shape();
    return s == Shape::convex || s == Shape::linear;
}

std::vector<double> Distortion::breakpoints() const {
    switch (kind_) {
    case DistortionKind::var:
        return {dualized_ ? param_ : 1.0 - param_};
    case DistortionKind::es:
        return {dualized_ ? param_ : 1.0 - param_};
    default:
        return {};
    }
}

namespace {

// Measure whose cumulative is d.eval itself.
StieltjesMeasure measure_of(const Distortion& d) {
    StieltjesMeasure m;
    const double a = d.param();
    switch (d.kind()) {
    case DistortionKind::var:
        m.atoms.push_back({d.dualized() ? a : 1.0 - a, 1.0});
        return m;
    case DistortionKind::es: {
        const double w1 = 1.0 - a; // ramp slope span
        if (d.dualized()) {
            // max(0,(p-a)/(1-a)) on (a, 1)
            m.segments.push_back({a, 1.0, 1.0,
                                  [w1](double) { return 1.0 / w1; },
                                  [a, w1](double p) { return (p - a) / w1; },
                                  [a, w1](double w) { return a + w1 * w; },
                                  [w1](double w) { return floor_sp(w1 * (1.0 - w)); }});
        } else {
            // min(1, p/(1-a)) on (0, 1-a); 1-p = (1-w) + a*w exactly
            m.segments.push_back({0.0, w1, 1.0,
                                  [w1](double) { return 1.0 / w1; },
                                  [w1](double p) { return p / w1; },
                                  [w1](double w) { return w1 * w; },
                                  [a](double w) { return (1.0 - w) + a * w; }});
        }
        return m;
    }
    case DistortionKind::power: {
        const double g = a;
        m.segments.push_back(
            {0.0, 1.0, 1.0, [g](double p) { return g * std::pow(p, g - 1.0); },
             [g](double p) { return std::pow(p, g); },
             [g](double w) { return std::pow(w, 1.0 / g); },
             [g](double w) { return floor_sp(-std::expm1(std::log(w) / g)); }});
        return m;
    }
    case DistortionKind::dual_power: {
        const double k = a;
        m.segments.push_back(
            {0.0, 1.0, 1.0,
             [k](double p) { return k * std::exp((k - 1.0) * std::log1p(-p)); },
             [k](double p) { return -std::expm1(k * std::log1p(-p)); },
             [k](double w) { return -std::expm1(std::log1p(-w) / k); },
             [k](double w) { return floor_sp(std::exp(std::log1p(-w) / k)); }});
        return m;
    }
    case DistortionKind::wang: {
        const double l = a;
        m.segments.push_back(
            {0.0, 1.0, 1.0,
             [l](double p) {
                 const double z = norm_quantile(p);
                 return std::exp(-l * z - 0.5 * l * l);
             },
             [l](double p) { return norm_cdf(norm_quantile(p) + l); },
             [l](double w) { return norm_cdf(norm_quantile(w) - l); },
             [l](double w) { return floor_sp(norm_sf(norm_quantile(w) - l)); }});
        return m;
    }
    case DistortionKind::identity:
        m.segments.push_back({0.0, 1.0, 1.0, [](double) { return 1.0; },
                              [](double p) { return p; }, [](double w) { return w; },
                              [](double w) { return floor_sp(1.0 - w); }});
        return m;
    }
    return m;
}

} // namespace

StieltjesMeasure Distortion::dual_measure() const { return measure_of(dual()); }

std::string Distortion::to_string() const {
    char buf[64];
    auto fmt = [&](const char* name) {
        std::snprintf(buf, sizeof(buf), "%s:%.12g", name, param_);
        return std::string(buf);
    };
    std::string base;
    switch (kind_) {
    case DistortionKind::var: base = fmt("var"); break;
    case DistortionKind::es: base = fmt("es"); break;
    case DistortionKind::power: base = fmt("power"); break;
    case DistortionKind::dual_power: base = fmt("dualpower"); break;
    case DistortionKind::wang: base = fmt("wang"); break;
    case DistortionKind::identity: base = "id"; break;
    }
    return dualized_ ? "dual(" + base + ")" : base;
}

Distortion Distortion::parse(std::string_view text) {
    const auto fs = detail::parse_family(text, "distortion");
    auto need = [&](std::size_t n) { detail::need_args(fs, n, "distortion"); };
    const std::string& name = fs.name;
    const auto& args = fs.args;
    if (name == "var") { need(1); return var(args[0]); }
    if (name == "es") { need(1); return es(args[0]); }
    if (name == "power") { need(1); return power(args[0]); }
    if (name == "dualpower" || name == "dual_power") { need(1); return dual_power(args[0]); }
    if (name == "wang") { need(1); return wang(args[0]); }
    if (name == "id" || name == "identity") { need(0); return identity(); }
    throw std::invalid_argument("unknown distortion '" + std::string(text) + "'");
}

bool dominates(const Distortion& g1, const Distortion& g2, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("dominates: grid_size must be >= 2");
    for (int i = 0; i <= grid_size; ++i) {
        const double p = static_cast<double>(i) / grid_size;
        if (g1.eval(p) > g2.eval(p) + 1e-12) return false;
    }
    return true;
}

} // namespace corisk
