#include "figures.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include "corisk/riskcore.hpp"

namespace corisk::fig {
namespace {

constexpr double kTol = 1e-6;     // slack for quadrature-backed comparisons
constexpr double kPsiTol = 1e-9;  // closed-form transform checks
constexpr double kQuadTol = 1e-8; // per-point integration tolerance
constexpr int kDefaultPoints = 80;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

// A named scalar curve evaluated over the panel's x-grid.
struct Series {
    std::string name;
    std::function<double(double)> f;
};

io::Table tabulate(const std::string& x_name, const std::vector<double>& grid,
                   const std::vector<Series>& series) {
    io::Table t;
    t.columns.push_back(x_name);
    for (const auto& s : series) t.columns.push_back(s.name);
    for (double x : grid) {
        std::vector<double> row{x};
        for (const auto& s : series) row.push_back(s.f(x));
        t.add_row(std::move(row));
    }
    return t;
}

io::CheckResult monotone(const io::Table& t, size_t col, int dir, std::string name,
                         double tol = kTol) {
    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < t.rows.size(); ++i)
        margin = std::min(margin, dir * (t.rows[i][col] - t.rows[i - 1][col]));
    return {std::move(name), margin >= -tol, margin};
}

io::CheckResult column_leq(const io::Table& t, size_t lo, size_t hi, std::string name,
                           double tol = kTol) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& row : t.rows) margin = std::min(margin, row[hi] - row[lo]);
    return {std::move(name), margin >= -tol, margin};
}

// Values increase left-to-right across the listed columns in every row.
io::CheckResult across_columns(const io::Table& t, size_t first_col, size_t last_col,
                               std::string name, double tol = kTol) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& row : t.rows)
        for (size_t j = first_col; j < last_col; ++j)
            margin = std::min(margin, row[j + 1] - row[j]);
    return {std::move(name), margin >= -tol, margin};
}

io::CheckResult nonnegative(const io::Table& t, size_t col, std::string name,
                            double tol = kTol) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& row : t.rows) margin = std::min(margin, row[col]);
    return {std::move(name), margin >= -tol, margin};
}

// Second differences on the (uniform) x-grid.
io::CheckResult convex(const io::Table& t, size_t col, std::string name,
                       double tol = kPsiTol) {
    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < t.rows.size(); ++i)
        margin = std::min(margin, t.rows[i + 1][col] - 2 * t.rows[i][col] +
                                      t.rows[i - 1][col]);
    return {std::move(name), margin >= -tol, margin};
}

io::CheckResult anchored01(const io::Table& t, size_t col, std::string name,
                           double tol = kPsiTol) {
    double dev = std::max(std::abs(t.rows.front()[col]),
                          std::abs(t.rows.back()[col] - 1.0));
    return {std::move(name), dev <= tol, -dev};
}

// CoD/contribution panels never evaluate the conditioning marginal, only its
// threshold level, so a placeholder X is enough.
BivariateModel model_of(const Copula& c, const Marginal& y) { return {c, y, y}; }

double cod_val(const Copula& c, const Marginal& y, double u, const Distortion& h) {
    return cod_at(model_of(c, y), u, h, kQuadTol).value;
}
double delta_val(const Copula& c, const Marginal& y, double u, const Distortion& h) {
    return delta_cod_at(model_of(c, y), u, h, kQuadTol).value;
}
double delta2_val(const Copula& c, const Marginal& y, double u, double u2,
                  const Distortion& h) {
    return delta_cod_type2_at(model_of(c, y), u, u2, h, kQuadTol).value;
}

int pick(int points, int fallback) { return points > 1 ? points : fallback; }

FigureResult fig_1a(int points) {
    FigureResult r;
    std::vector<double> grid;
    if (points > 1) {
        grid = linspace(0.1, 4.0, points);
    } else {
        for (double g = 0.1; g <= 4.0 + 1e-12; g += 0.05) grid.push_back(g);
    }
    const Marginal y = Marginal::normal(0, 1);
    const double u = 0.95;
    std::vector<double> thetas{1, 1.5, 2, 2.5, 4};
    std::vector<Series> series;
    for (double th : thetas)
        series.push_back({"theta=" + io::fmt_double(th), [=](double g) {
                              return cod_val(Copula::gumbel(th), y, u, Distortion::power(g));
                          }});
    r.table = tabulate("gamma", grid, series);
    for (size_t j = 0; j < thetas.size(); ++j)
        r.checks.push_back(monotone(r.table, j + 1, -1,
                                    "cod decreasing in gamma [" + series[j].name + "]"));
    r.checks.push_back(across_columns(r.table, 1, thetas.size(), "cod increasing in theta"));
    r.params = {{"copula", "gumbel:theta"}, {"Y", "normal:0,1"}, {"u_g", "0.95"},
                {"h", "power:gamma"}};
    return r;
}

FigureResult fig_1b(int points) {
    FigureResult r;
    auto grid = linspace(0.7, 0.99, pick(points, kDefaultPoints));
    const Marginal y = Marginal::normal(0, 1);
    const Distortion h = Distortion::power(0.5);
    std::vector<double> thetas{1.5, 2, 2.5, 3, 4};
    std::vector<Series> series;
    for (double th : thetas)
        series.push_back({"theta=" + io::fmt_double(th), [=](double u) {
                              return cod_val(Copula::gumbel(th), y, u, h);
                          }});
    r.table = tabulate("u_g", grid, series);
    for (size_t j = 0; j < thetas.size(); ++j)
        r.checks.push_back(monotone(r.table, j + 1, +1,
                                    "cod increasing in u_g [" + series[j].name + "]"));
    r.checks.push_back(across_columns(r.table, 1, thetas.size(), "cod increasing in theta"));
    r.params = {{"copula", "gumbel:theta"}, {"Y", "normal:0,1"}, {"h", "power:0.5"}};
    return r;
}

FigureResult fig_1c(int points) {
    FigureResult r;
    auto grid = linspace(0.0125, 1.0, pick(points, kDefaultPoints));
    const Marginal y = Marginal::normal(0, 1);
    const Marginal yp = Marginal::normal(0, std::sqrt(2.0));
    const Copula c = Copula::gumbel(2), cp = Copula::gumbel(4);
    const double u = 0.8, up = 0.99;
    std::vector<Series> series{
        {"cod_Y_X", [=](double g) { return cod_val(c, y, u, Distortion::power(g)); }},
        {"cod_Y_Xp", [=](double g) { return cod_val(cp, y, up, Distortion::power(g)); }},
        {"cod_Yp_X", [=](double g) { return cod_val(c, yp, u, Distortion::power(g)); }},
        {"cod_Yp_Xp", [=](double g) { return cod_val(cp, yp, up, Distortion::power(g)); }}};
    r.table = tabulate("gamma", grid, series);
    r.checks.push_back(column_leq(r.table, 1, 3, "cod[Y|X] <= cod[Y'|X]"));
    r.checks.push_back(column_leq(r.table, 3, 4, "cod[Y'|X] <= cod[Y'|X']"));
    r.checks.push_back(column_leq(r.table, 1, 2, "cod[Y|X] <= cod[Y|X']"));
    r.checks.push_back(column_leq(r.table, 2, 4, "cod[Y|X'] <= cod[Y'|X']"));
    r.params = {{"copulas", "gumbel:2 vs gumbel:4"}, {"Y", "normal:0,1"},
                {"Y'", "normal:0,1.4142135623730951"}, {"u_g", "0.8 vs 0.99"},
                {"h", "power:gamma (concave range)"}};
    return r;
}

FigureResult fig_2a(int points) {
    FigureResult r;
    auto grid = linspace(1.0, 5.0, pick(points, kDefaultPoints));
    const Marginal y = Marginal::gamma(0.3, 1), yp = Marginal::gamma(2, 1);
    const Distortion h = Distortion::power(0.4);
    const double u = 0.8;
    std::vector<Series> series{
        {"delta_Y", [=](double th) { return delta_val(Copula::gumbel(th), y, u, h); }},
        {"delta_Yp", [=](double th) { return delta_val(Copula::gumbel(th), yp, u, h); }}};
    r.table = tabulate("theta", grid, series);
    r.checks.push_back(column_leq(r.table, 1, 2, "delta[Y|X] <= delta[Y'|X']"));
    r.checks.push_back(monotone(r.table, 1, +1, "delta[Y|X] increasing in theta"));
    r.checks.push_back(monotone(r.table, 2, +1, "delta[Y'|X'] increasing in theta"));
    r.params = {{"Y", "gamma:0.3,1"}, {"Y'", "gamma:2,1"}, {"u_g", "0.8"},
                {"h", "power:0.4"}};
    return r;
}

FigureResult fig_2b(int points) {
    FigureResult r;
    auto grid = linspace(0.1, 4.0, pick(points, kDefaultPoints));
    const Marginal y = Marginal::gamma(0.2, 1);
    const Copula c = Copula::gumbel(2);
    std::vector<Series> series{
        {"delta", [=](double g) { return delta_val(c, y, 0.9, Distortion::power(g)); }}};
    r.table = tabulate("gamma", grid, series);
    r.checks.push_back(monotone(r.table, 1, -1, "delta decreasing in gamma"));
    r.params = {{"copula", "gumbel:2"}, {"Y", "gamma:0.2,1"}, {"u_g", "0.9"},
                {"h", "power:gamma"}};
    return r;
}

FigureResult fig_2c(int points) {
    FigureResult r;
    auto grid = linspace(0.6, 0.99, pick(points, kDefaultPoints));
    const Marginal y = Marginal::gamma(0.2, 1), yp = Marginal::gamma(2, 1);
    const Copula c = Copula::gumbel(2), cp = Copula::gumbel(3);
    const Distortion h = Distortion::power(3), hp = Distortion::power(2);
    std::vector<Series> series{
        {"delta_Y", [=](double u) { return delta_val(c, y, u, h); }},
        {"delta_Yp", [=](double u) { return delta_val(cp, yp, u, hp); }}};
    r.table = tabulate("u_g", grid, series);
    r.checks.push_back(column_leq(r.table, 1, 2, "delta[Y|X] <= delta[Y'|X']"));
    r.checks.push_back(monotone(r.table, 1, +1, "delta[Y|X] increasing in u_g"));
    r.checks.push_back(monotone(r.table, 2, +1, "delta[Y'|X'] increasing in u_g"));
    r.params = {{"Y", "gamma:0.2,1 (theta=2, h=power:3)"},
                {"Y'", "gamma:2,1 (theta=3, h=power:2)"}};
    return r;
}

FigureResult fig_2d(int points) {
    FigureResult r;
    auto grid = linspace(0.3, 5.0, pick(points, kDefaultPoints));
    const Copula c = Copula::gumbel(2);
    const Distortion h = Distortion::power(2);
    const double u = 0.9, u2 = 0.8;
    const double base = delta2_val(c, Marginal::gamma(0.3, 1), u, u2, h);
    std::vector<Series> series{{"delta2_gap", [=](double a2) {
                                    return delta2_val(c, Marginal::gamma(a2, 1), u, u2, h) -
                                           base;
                                }}};
    r.table = tabulate("a2", grid, series);
    r.checks.push_back(nonnegative(
        r.table, 1, "type-II contribution gap nonnegative (dispersion-ordered marginals)"));
    r.params = {{"copula", "gumbel:2"}, {"Y", "gamma:0.3,1"}, {"Y'", "gamma:a2,1"},
                {"u_g", "0.9"}, {"u_g2", "0.8"}, {"h", "power:2"}};
    return r;
}

FigureResult psi_panel(const char* id, const std::vector<double>& params, bool vary_theta,
                       int points) {
    FigureResult r;
    auto grid = linspace(0.0, 1.0, pick(points, kDefaultPoints + 1));
    const double u = 0.9;
    std::vector<Series> series;
    for (double prm : params) {
        const Copula c = Copula::gumbel(vary_theta ? prm : 1.5);
        const Distortion h = Distortion::dual_power(vary_theta ? 1.1 : prm);
        std::string nm = (vary_theta ? "theta=" : "gamma=") + io::fmt_double(prm);
        series.push_back({nm, [=](double t) { return psi_transform(c, u, h, t); }});
    }
    r.table = tabulate("t", grid, series);
    for (size_t j = 0; j < params.size(); ++j) {
        r.checks.push_back(convex(r.table, j + 1, "psi convex [" + series[j].name + "]"));
        r.checks.push_back(
            anchored01(r.table, j + 1, "psi endpoints anchored [" + series[j].name + "]"));
    }
    r.id = id;
    r.params = {{"copula", vary_theta ? "gumbel:theta" : "gumbel:1.5"},
                {"u_g", "0.9"},
                {"h", vary_theta ? "dualpower:1.1" : "dualpower:gamma"}};
    return r;
}

FigureResult fig_4(int points) {
    FigureResult r;
    auto grid = linspace(0.6, 0.99, pick(points, kDefaultPoints));
    const Marginal y = Marginal::weibull(2, 1), yp = Marginal::weibull(1, 1);
    const Copula c = Copula::gumbel(1.5);
    const Distortion h = Distortion::dual_power(2);
    std::vector<Series> series{
        {"delta_Y", [=](double u) { return delta_val(c, y, u, h); }},
        {"delta_Yp", [=](double u) { return delta_val(c, yp, u, h); }}};
    r.table = tabulate("u_g", grid, series);
    r.checks.push_back(column_leq(r.table, 1, 2, "delta[Y|X] <= delta[Y'|X']"));
    r.params = {{"copula", "gumbel:1.5"}, {"Y", "weibull:2,1"}, {"Y'", "weibull:1,1"},
                {"h", "dualpower:2"}};
    return r;
}

// Paired-risk panels: compare the two conditioning directions of one vector.
FigureResult paired_panel(const char* id, const Copula& c, const Distortion& g,
                          const Marginal& x, const Marginal& y, bool contribution,
                          int points) {
    FigureResult r;
    r.id = id;
    auto grid = linspace(0.1, 4.0, pick(points, kDefaultPoints));
    const double ux = threshold_quantile(g, x);
    const double uy = threshold_quantile(g, y);
    auto val = [&](const Marginal& target, double u, double g2) {
        return contribution ? delta_val(c, target, u, Distortion::power(g2))
                            : cod_val(c, target, u, Distortion::power(g2));
    };
    const char* base = contribution ? "delta" : "cod";
    std::vector<Series> series{
        {std::string(base) + "_Y_X", [&, ux](double g2) { return val(y, ux, g2); }},
        {std::string(base) + "_X_Y", [&, uy](double g2) { return val(x, uy, g2); }}};
    r.table = tabulate("gamma2", grid, series);
    r.params = {{"g", g.to_string()}, {"X", x.to_string()}, {"Y", y.to_string()},
                {"u_g_X", io::fmt_double(ux)}, {"u_g_Y", io::fmt_double(uy)},
                {"h", "power:gamma2"}};
    return r;
}

FigureResult fig_6a(int points) {
    FigureResult r;
    auto grid = linspace(0.0, 0.99, pick(points, kDefaultPoints));
    const Marginal y = Marginal::gamma(0.8, 0.5);
    const Distortion h = Distortion::power(5);
    std::vector<double> alphas{-0.9, -0.7, -0.5, -0.3, -0.1};
    std::vector<Series> series;
    for (double a : alphas)
        series.push_back({"alpha=" + io::fmt_double(a), [=](double u) {
                              return cod_val(Copula::fgm(a), y, u, h);
                          }});
    r.table = tabulate("u_g", grid, series);
    for (size_t j = 0; j < alphas.size(); ++j)
        r.checks.push_back(monotone(r.table, j + 1, -1,
                                    "cod decreasing in u_g [" + series[j].name + "]"));
    r.checks.push_back(across_columns(r.table, 1, alphas.size(), "cod increasing in alpha"));
    r.params = {{"copula", "fgm:alpha"}, {"Y", "gamma:0.8,0.5"}, {"h", "power:5"}};
    return r;
}

FigureResult fig_6b(int points) {
    FigureResult r;
    auto grid = linspace(1.0, 5.0, pick(points, kDefaultPoints));
    const Marginal y = Marginal::gamma(0.8, 0.5), yp = Marginal::gamma(1.8, 0.5);
    const Copula c = Copula::fgm(-0.9), cp = Copula::fgm(-0.3);
    const double u = 0.95;
    std::vector<Series> series{
        {"cod_Y", [=](double g) { return cod_val(c, y, u, Distortion::power(g)); }},
        {"cod_Yp", [=](double g) { return cod_val(cp, yp, u, Distortion::power(g)); }}};
    r.table = tabulate("gamma", grid, series);
    r.checks.push_back(column_leq(r.table, 1, 2, "cod[Y|X] <= cod[Y'|X']"));
    r.params = {{"Y", "gamma:0.8,0.5 (alpha=-0.9)"}, {"Y'", "gamma:1.8,0.5 (alpha=-0.3)"},
                {"u_g", "0.95"}, {"h", "power:gamma (convex range)"}};
    return r;
}

FigureResult fig_6c(int points) {
    FigureResult r;
    auto grid = linspace(0.1, 4.0, pick(points, kDefaultPoints));
    const Marginal y = Marginal::gamma(0.6, 1), yp = Marginal::gamma(1.2, 1);
    const Copula c = Copula::fgm(-0.3), cp = Copula::fgm(-0.9);
    std::vector<Series> series{
        {"delta_Y", [=](double g) { return delta_val(c, y, 0.95, Distortion::power(g)); }},
        {"delta_Yp",
         [=](double g) { return delta_val(cp, yp, 0.9, Distortion::power(g)); }}};
    r.table = tabulate("gamma", grid, series);
    r.checks.push_back(column_leq(r.table, 2, 1, "delta[Y'|X'] <= delta[Y|X]"));
    r.params = {{"Y", "gamma:0.6,1 (u_g=0.95, alpha=-0.3)"},
                {"Y'", "gamma:1.2,1 (u_g=0.9, alpha=-0.9)"}, {"h", "power:gamma"}};
    return r;
}

FigureResult fig_6d(int points) {
    FigureResult r;
    auto grid = linspace(0.1, 4.0, pick(points, kDefaultPoints));
    const Marginal y = Marginal::gamma(0.8, 0.5);
    const Copula c = Copula::fgm(-0.8);
    std::vector<Series> series{
        {"delta", [=](double g) { return delta_val(c, y, 0.95, Distortion::power(g)); }}};
    r.table = tabulate("gamma", grid, series);
    r.checks.push_back(monotone(r.table, 1, +1, "delta increasing in gamma"));
    r.params = {{"copula", "fgm:-0.8"}, {"Y", "gamma:0.8,0.5"}, {"u_g", "0.95"},
                {"h", "power:gamma"}};
    return r;
}

} // namespace

bool FigureResult::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"1a", "1b", "1c", "2a", "2b", "2c",
                                              "2d", "3a", "3b", "4",  "5a", "5b",
                                              "6a", "6b", "6c", "6d", "7a", "7b"};
    return ids;
}

FigureResult run_figure(const std::string& id, int points) {
    FigureResult r;
    if (id == "1a") r = fig_1a(points);
    else if (id == "1b") r = fig_1b(points);
    else if (id == "1c") r = fig_1c(points);
    else if (id == "2a") r = fig_2a(points);
    else if (id == "2b") r = fig_2b(points);
    else if (id == "2c") r = fig_2c(points);
    else if (id == "2d") r = fig_2d(points);
    else if (id == "3a") r = psi_panel("3a", {1.2, 1.8, 2.5, 3, 5}, true, points);
    else if (id == "3b") r = psi_panel("3b", {1.2, 2, 3, 4, 5}, false, points);
    else if (id == "4") r = fig_4(points);
    else if (id == "5a" || id == "5b") {
        r = paired_panel(id.c_str(), Copula::gumbel(2), Distortion::power(0.3),
                         Marginal::gamma(0.5, 1), Marginal::gamma(1.5, 1), id == "5b",
                         points);
        const char* base = id == "5b" ? "delta" : "cod";
        r.checks.push_back(column_leq(r.table, 2, 1,
                                      std::string(base) + "[X|Y] <= " + base + "[Y|X]"));
    } else if (id == "6a") r = fig_6a(points);
    else if (id == "6b") r = fig_6b(points);
    else if (id == "6c") r = fig_6c(points);
    else if (id == "6d") r = fig_6d(points);
    else if (id == "7a" || id == "7b") {
        r = paired_panel(id.c_str(), Copula::fgm(-0.8), Distortion::power(0.2),
                         Marginal::gamma(0.8, 1), Marginal::gamma(0.8, 0.5), id == "7b",
                         points);
        if (id == "7a")
            r.checks.push_back(column_leq(r.table, 2, 1, "cod[X|Y] <= cod[Y|X]"));
        else
            r.checks.push_back(column_leq(r.table, 1, 2, "delta[Y|X] <= delta[X|Y]"));
    } else {
        throw std::invalid_argument("unknown figure id: " + id);
    }
    r.id = id;
    return r;
}

nlohmann::json to_json(const FigureResult& f) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : f.checks) checks.push_back(io::to_json(c));
    nlohmann::json j = io::to_json(f.table);
    j["figure"] = f.id;
    j["params"] = f.params;
    j["checks"] = checks;
    j["all_checks_pass"] = f.all_pass();
    return j;
}

std::string gnuplot_script(const FigureResult& f, const std::string& data_path) {
    std::string s;
    s += "set datafile separator ','\n";
    s += "set key autotitle columnhead\n";
    s += "set xlabel '" + f.table.columns.front() + "'\n";
    s += "set title 'figure " + f.id + "'\n";
    s += "plot";
    for (size_t j = 1; j < f.table.columns.size(); ++j) {
        if (j > 1) s += ",";
        s += " '" + data_path + "' using 1:" + std::to_string(j + 1) + " with lines";
    }
    s += "\n";
    return s;
}

} // namespace corisk::fig
