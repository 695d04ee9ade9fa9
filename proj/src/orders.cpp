#include "corisk/orders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace corisk {

namespace {

constexpr double kTol = 1e-9;
constexpr double kULo = 1e-6;

std::vector<double> u_grid(int n) {
    if (n < 2) throw std::invalid_argument("check_order: grid_size must be >= 2");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = kULo + (1.0 - 2.0 * kULo) * static_cast<double>(i) / (n - 1);
    return g;
}

// Union of both quantile grids: spacing adapts to wherever either
// distribution carries mass.
std::vector<double> support_grid(const Marginal& x, const Marginal& y, int n) {
    const auto us = u_grid(n);
    std::vector<double> t;
    t.reserve(2 * us.size());
    for (double u : us) t.push_back(x.quantile(u));
    for (double u : us) t.push_back(y.quantile(u));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

double safe_log(double v) { return std::log(std::max(v, 1e-300)); }

struct SlackTracker {
    OrderVerdict v;
    void feed(double slack, double w1, double lhs, double rhs) {
        if (slack < v.margin) v.margin = slack;
        if (slack < -kTol && !v.first_violation)
            v.first_violation = Violation{w1, std::numeric_limits<double>::quiet_NaN(),
                                          lhs, rhs};
    }
    OrderVerdict finish() {
        v.holds = v.margin >= -kTol;
        return v;
    }
};

} // namespace

const char* order_name(Order o) {
    switch (o) {
    case Order::st: return "st";
    case Order::hr: return "hr";
    case Order::lr: return "lr";
    case Order::icx: return "icx";
    case Order::icv: return "icv";
    case Order::disp: return "disp";
    case Order::ew: return "ew";
    }
    return "?";
}

Order parse_order(std::string_view text) {
    const std::string s(text);
    if (s == "st") return Order::st;
    if (s == "hr") return Order::hr;
    if (s == "lr") return Order::lr;
    if (s == "icx") return Order::icx;
    if (s == "icv") return Order::icv;
    if (s == "disp") return Order::disp;
    if (s == "ew") return Order::ew;
    throw std::invalid_argument("unknown stochastic order '" + s + "'");
}

OrderVerdict check_order(const Marginal& x, const Marginal& y, Order o, int grid_size) {
    SlackTracker t;
    switch (o) {
    case Order::st: {
        for (double s : support_grid(x, y, grid_size)) {
            const double fx = x.sf(s), fy = y.sf(s);
            t.feed(fy - fx, s, fx, fy);
        }
        break;
    }
    case Order::hr: {
        // survival ratio sf_y/sf_x nondecreasing <=> log difference monotone
        const auto ts = support_grid(x, y, grid_size);
        double prev = safe_log(y.sf(ts[0])) - safe_log(x.sf(ts[0]));
        for (std::size_t i = 1; i < ts.size(); ++i) {
            const double cur = safe_log(y.sf(ts[i])) - safe_log(x.sf(ts[i]));
            t.feed(cur - prev, ts[i], prev, cur);
            prev = cur;
        }
        break;
    }
    case Order::lr: {
        // density ratio pdf_y/pdf_x nondecreasing on the common support
        const auto ts = support_grid(x, y, grid_size);
        bool have_prev = false;
        double prev = 0.0;
        for (double s : ts) {
            const double fx = x.pdf(s), fy = y.pdf(s);
            if (!std::isfinite(fx) || !std::isfinite(fy)) continue;
            const double cur = safe_log(fy) - safe_log(fx);
            if (have_prev) t.feed(cur - prev, s, prev, cur);
            prev = cur;
            have_prev = true;
        }
        break;
    }
    case Order::icx: {
        // upper partial quantile integral: (1-u) q(u) + integrated_tail(u)
        for (double u : u_grid(grid_size)) {
            const double ix = (1.0 - u) * x.quantile(u) + x.integrated_tail(u);
            const double iy = (1.0 - u) * y.quantile(u) + y.integrated_tail(u);
            t.feed(iy - ix, u, ix, iy);
        }
        break;
    }
    case Order::icv: {
        // lower partial quantile integral: mean - upper partial integral
        for (double u : u_grid(grid_size)) {
            const double jx =
                x.mean() - ((1.0 - u) * x.quantile(u) + x.integrated_tail(u));
            const double jy =
                y.mean() - ((1.0 - u) * y.quantile(u) + y.integrated_tail(u));
            t.feed(jy - jx, u, jx, jy);
        }
        break;
    }
    case Order::disp: {
        const auto us = u_grid(grid_size);
        double prev = y.quantile(us[0]) - x.quantile(us[0]);
        for (std::size_t i = 1; i < us.size(); ++i) {
            const double cur = y.quantile(us[i]) - x.quantile(us[i]);
            t.feed(cur - prev, us[i], prev, cur);
            prev = cur;
        }
        break;
    }
    case Order::ew: {
        for (double u : u_grid(grid_size)) {
            const double ix = x.integrated_tail(u), iy = y.integrated_tail(u);
            t.feed(iy - ix, u, ix, iy);
        }
        break;
    }
    }
    return t.finish();
}

} // namespace corisk
