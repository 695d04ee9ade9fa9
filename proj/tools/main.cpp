#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "corisk/errors.hpp"
#include "corisk/orders.hpp"
#include "figures.hpp"
#include "serialize.hpp"

using namespace corisk;

namespace {

constexpr int kExitCheckFailure = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUsage = 4;

struct GlobalOpts {
    std::string out;
    std::string format = "json";
    double tol = 1e-8;
    int grid = 0;
    std::uint64_t seed = 42;
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw std::invalid_argument("cannot open output file: " + g.out);
    f << text;
}

void emit_json(const GlobalOpts& g, const nlohmann::json& j) {
    emit(g, j.dump(2) + "\n");
}

// csv rendering of a flat json object: header row of keys, one row of values.
void emit_scalar(const GlobalOpts& g, const nlohmann::json& j) {
    if (g.format == "json") {
        emit_json(g, j);
        return;
    }
    std::string head, row;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!head.empty()) { head += ','; row += ','; }
        head += it.key();
        const auto& v = it.value();
        if (v.is_number_float()) row += io::fmt_double(v.get<double>());
        else if (v.is_string()) row += v.get<std::string>();
        else row += v.dump();
    }
    emit(g, head + "\n" + row + "\n");
}

int run(int argc, char** argv) {
    CLI::App app{"conditional distortion risk measures: library driver"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--out", g.out, "write output to this file instead of stdout");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", g.tol, "quadrature tolerance (default 1e-8)");
    app.add_option("--grid", g.grid, "grid density override");
    app.add_option("--seed", g.seed, "RNG seed (oracle)");

    std::string s_g, s_g2, s_h, s_x, s_y, s_c, s_model, s_order, s_notion, fig_id;
    double u = -1, u2 = -1, alpha = 0.95, beta = 0.95;
    long mc_n = 200000;
    int mc_batches = 20;
    bool gnuplot = false;

    // the default -h short flag would clash with the --h distortion option
    auto add_cmd = [&](const char* name, const char* desc) {
        auto* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print this help message and exit");
        sub->fallthrough(); // allow the global flags after the subcommand name
        return sub;
    };

    auto* cmd_dmeasure = add_cmd("dmeasure", "distortion risk measure of a marginal");
    cmd_dmeasure->add_option("--g", s_g, "distortion, e.g. power:0.3")->required();
    cmd_dmeasure->add_option("--x", s_x, "marginal, e.g. gamma:0.5,1")->required();

    auto* cmd_threshold = add_cmd("threshold", "conditioning level F(D_g[X])");
    cmd_threshold->add_option("--g", s_g)->required();
    cmd_threshold->add_option("--x", s_x)->required();

    auto* cmd_cod = add_cmd("cod", "conditional distortion risk of Y given X in its g-tail");
    cmd_cod->add_option("--model", s_model, "copula,X,Y e.g. gumbel:2,normal:0,1,exp:1")->required();
    cmd_cod->add_option("--g", s_g, "distortion applied to X");
    cmd_cod->add_option("--u", u, "explicit conditioning level instead of --g");
    cmd_cod->add_option("--h", s_h, "distortion applied to Y")->required();

    auto* cmd_delta = add_cmd("delta", "type-I contribution: cod minus unconditional");
    cmd_delta->add_option("--model", s_model)->required();
    cmd_delta->add_option("--g", s_g);
    cmd_delta->add_option("--u", u);
    cmd_delta->add_option("--h", s_h)->required();

    auto* cmd_delta2 = add_cmd("delta2", "type-II contribution: cod at two levels");
    cmd_delta2->add_option("--model", s_model)->required();
    cmd_delta2->add_option("--g", s_g);
    cmd_delta2->add_option("--g2", s_g2);
    cmd_delta2->add_option("--u", u);
    cmd_delta2->add_option("--u2", u2);
    cmd_delta2->add_option("--h", s_h)->required();

    auto* cmd_classic = add_cmd("classic", "covar / coes / mes at (alpha, beta)");
    cmd_classic->add_option("--model", s_model)->required();
    cmd_classic->add_option("--alpha", alpha, "conditioning VaR level (default 0.95)");
    cmd_classic->add_option("--beta", beta, "target level (default 0.95)");

    auto* cmd_figure = add_cmd("figure", "reproduce one experiment panel");
    cmd_figure->add_option("id", fig_id, "panel id, e.g. 1a")->required();
    cmd_figure->add_flag("--gnuplot", gnuplot, "also emit a gnuplot script (requires --out)");

    auto* cmd_order = add_cmd("check-order", "verify a stochastic order between marginals");
    cmd_order->add_option("--x", s_x)->required();
    cmd_order->add_option("--y", s_y)->required();
    cmd_order->add_option("--order", s_order, "st|hr|lr|icx|icv|disp|ew")->required();

    auto* cmd_dep = add_cmd("check-dep", "verify a dependence notion of a copula");
    cmd_dep->add_option("--c", s_c)->required();
    cmd_dep->add_option("--notion", s_notion, "PQD|NQD|RTI|RTD|SI|SD|TP2|RR2|PDS|NDS")->required();

    auto* cmd_psi = add_cmd("psi", "convexity of the distorted conditional-tail transform");
    cmd_psi->add_option("--c", s_c)->required();
    cmd_psi->add_option("--u", u, "conditioning level")->required();
    cmd_psi->add_option("--h", s_h)->required();

    auto* cmd_oracle = add_cmd("oracle", "Monte Carlo estimate of cod");
    cmd_oracle->add_option("--model", s_model)->required();
    cmd_oracle->add_option("--g", s_g)->required();
    cmd_oracle->add_option("--h", s_h)->required();
    cmd_oracle->add_option("--n", mc_n, "total draws (default 200000)");
    cmd_oracle->add_option("--batches", mc_batches, "batches for the stderr (default 20)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    auto conditioning_level = [&](const std::string& gs, double level,
                                  const Marginal& m) -> double {
        if ((gs.empty()) == (level < 0))
            throw std::invalid_argument("give exactly one of --g / --u");
        if (!gs.empty()) return threshold_quantile(Distortion::parse(gs), m);
        return level;
    };

    if (*cmd_dmeasure) {
        RiskResult r = distortion_measure(Distortion::parse(s_g), Marginal::parse(s_x), g.tol);
        nlohmann::json j = io::to_json(r, "dmeasure");
        j["g"] = s_g;
        j["x"] = s_x;
        emit_scalar(g, j);
    } else if (*cmd_threshold) {
        double ug = threshold_quantile(Distortion::parse(s_g), Marginal::parse(s_x));
        emit_scalar(g, {{"measure", "threshold"}, {"u_g", ug}, {"g", s_g}, {"x", s_x}});
    } else if (*cmd_cod || *cmd_delta) {
        BivariateModel m = BivariateModel::parse(s_model);
        double ug = conditioning_level(s_g, u, m.x);
        Distortion h = Distortion::parse(s_h);
        bool is_delta = static_cast<bool>(*cmd_delta);
        RiskResult r = is_delta ? delta_cod_at(m, ug, h, g.tol) : cod_at(m, ug, h, g.tol);
        nlohmann::json j = io::to_json(r, is_delta ? "delta" : "cod");
        j["model"] = m.to_string();
        j["h"] = h.to_string();
        emit_scalar(g, j);
    } else if (*cmd_delta2) {
        BivariateModel m = BivariateModel::parse(s_model);
        double ug = conditioning_level(s_g, u, m.x);
        double ug2 = conditioning_level(s_g2, u2, m.x);
        RiskResult r = delta_cod_type2_at(m, ug, ug2, Distortion::parse(s_h), g.tol);
        nlohmann::json j = io::to_json(r, "delta2");
        j["model"] = m.to_string();
        emit_scalar(g, j);
    } else if (*cmd_classic) {
        BivariateModel m = BivariateModel::parse(s_model);
        ClassicMeasures cm = classic_measures(m, alpha, beta, g.tol);
        nlohmann::json j{{"measure", "classic"},
                         {"alpha", alpha},
                         {"beta", beta},
                         {"model", m.to_string()},
                         {"covar", io::to_json(cm.covar, "covar")},
                         {"coes", io::to_json(cm.coes, "coes")},
                         {"mes", io::to_json(cm.mes, "mes")}};
        emit_json(g, j);
    } else if (*cmd_figure) {
        if (gnuplot && (g.out.empty() || g.format != "csv"))
            throw std::invalid_argument("--gnuplot requires --out and --format csv");
        fig::FigureResult f = fig::run_figure(fig_id, g.grid);
        if (g.format == "csv") {
            emit(g, io::to_csv(f.table));
            for (const auto& c : f.checks)
                std::fprintf(stderr, "[%s] %s (margin %.3g)\n", c.pass ? "ok" : "FAIL",
                             c.name.c_str(), c.margin);
        } else {
            emit_json(g, fig::to_json(f));
        }
        if (gnuplot) {
            std::ofstream script(g.out + ".gp");
            script << fig::gnuplot_script(f, g.out);
        }
        if (!f.all_pass()) return kExitCheckFailure;
    } else if (*cmd_order) {
        OrderVerdict v = check_order(Marginal::parse(s_x), Marginal::parse(s_y),
                                     parse_order(s_order), g.grid > 1 ? g.grid : 2000);
        nlohmann::json j = io::to_json(v);
        j["order"] = s_order;
        j["x"] = s_x;
        j["y"] = s_y;
        emit_json(g, j);
        if (!v.holds) return kExitCheckFailure;
    } else if (*cmd_dep) {
        OrderVerdict v = check_dependence(Copula::parse(s_c), parse_dependence(s_notion),
                                          g.grid > 1 ? g.grid : 201);
        nlohmann::json j = io::to_json(v);
        j["notion"] = s_notion;
        j["c"] = s_c;
        emit_json(g, j);
        if (!v.holds) return kExitCheckFailure;
    } else if (*cmd_psi) {
        if (u < 0) throw std::invalid_argument("psi requires --u");
        OrderVerdict v = psi_convexity(Copula::parse(s_c), u, Distortion::parse(s_h),
                                       g.grid > 1 ? g.grid : 200);
        nlohmann::json j = io::to_json(v);
        j["transform"] = "psi";
        j["c"] = s_c;
        j["u_g"] = u;
        j["h"] = s_h;
        emit_json(g, j);
        if (!v.holds) return kExitCheckFailure;
    } else if (*cmd_oracle) {
        BivariateModel m = BivariateModel::parse(s_model);
        McEstimate e = mc_cod(m, Distortion::parse(s_g), Distortion::parse(s_h), mc_n,
                              g.seed, mc_batches);
        nlohmann::json j = io::to_json(e);
        j["model"] = m.to_string();
        j["g"] = s_g;
        j["h"] = s_h;
        emit_scalar(g, j);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitNumerical;
    } catch (const insufficient_acceptance& e) {
        std::fprintf(stderr, "insufficient acceptance: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
}
