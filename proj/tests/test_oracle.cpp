#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "corisk/errors.hpp"
#include "corisk/oracle.hpp"

using namespace corisk;

TEST_SUITE("oracle") {

TEST_CASE("generator: deterministic, stream-decorrelated, open-interval uniforms") {
    SplitMix64 a(42, 0), b(42, 0);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

    // Distinct streams under the same seed must not collide.
    SplitMix64 s0(42, 0), s1(42, 1);
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (s0.next_u64() == s1.next_u64()) ++equal;
    CHECK(equal == 0);

    SplitMix64 u(7, 3);
    double sum = 0.0;
    int out_of_range = 0;
    for (int i = 0; i < 20000; ++i) {
        const double x = u.next_unit();
        if (!(x > 0.0 && x < 1.0)) ++out_of_range;
        sum += x;
    }
    CHECK(out_of_range == 0);
    // mean of 20000 uniforms: sd ~ 0.00204, allow 5 sigma
    CHECK(std::fabs(sum / 20000 - 0.5) < 0.0103);
}

TEST_CASE("sampler: empirical copula matches the analytic cdf at the median point") {
    struct Case {
        Copula c;
        double want; // C(0.5, 0.5)
    };
    const Case cases[] = {
        {Copula::gumbel(2), std::exp(-std::sqrt(2.0) * std::log(2.0))},
        {Copula::fgm(-0.8), 0.25 - 0.8 * 0.0625},
        {Copula::independence(), 0.25},
    };
    const long n = 200000;
    for (const Case& k : cases) {
        auto pts = sample_pairs(k.c, n, 99);
        CHECK(static_cast<long>(pts.size()) == n);
        long hit = 0, out_of_range = 0;
        for (auto& [u, v] : pts) {
            if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0)) ++out_of_range;
            if (u <= 0.5 && v <= 0.5) ++hit;
        }
        CHECK(out_of_range == 0);
        const double phat = static_cast<double>(hit) / n;
        const double sd = std::sqrt(k.want * (1 - k.want) / n);
        CHECK(std::fabs(phat - k.want) <= 4 * sd);
    }
}

TEST_CASE("sampler: margins are uniform") {
    auto pts = sample_pairs(Copula::gumbel(3), 100000, 5);
    long below_u = 0, below_v = 0;
    for (auto& [u, v] : pts) {
        if (u <= 0.3) ++below_u;
        if (v <= 0.3) ++below_v;
    }
    const double sd = std::sqrt(0.3 * 0.7 / 100000.0);
    CHECK(std::fabs(below_u / 100000.0 - 0.3) <= 4 * sd);
    CHECK(std::fabs(below_v / 100000.0 - 0.3) <= 4 * sd);
}

TEST_CASE("estimator: acceptance rate tracks the conditioning mass") {
    const BivariateModel m{Copula::gumbel(2), Marginal::normal(0, 1),
                           Marginal::normal(0, 1)};
    const long n = 100000;
    for (double u_g : {0.8, 0.95}) {
        McEstimate e = mc_cod_at(m, u_g, Distortion::power(2), n, 11, 10);
        CHECK(e.n_total == n);
        const double rate = static_cast<double>(e.n_accepted) / n;
        const double sd = std::sqrt(u_g * (1 - u_g) / n);
        CHECK(std::fabs(rate - (1 - u_g)) <= 4 * sd);
        CHECK(e.batches == 10);
        CHECK(e.seed == 11);
        CHECK(e.stderr_est > 0.0);
    }
}

TEST_CASE("estimator: agrees with the analytic value within its own error bars") {
    struct Case {
        BivariateModel m;
        double u;
        Distortion h;
    };
    const Case cases[] = {
        {{Copula::gumbel(2), Marginal::normal(0, 1), Marginal::exponential(1)},
         0.95,
         Distortion::power(2)},
        {{Copula::fgm(-0.8), Marginal::normal(0, 1), Marginal::gamma(0.8, 1)},
         0.9,
         Distortion::dual_power(3)},
        {{Copula::independence(), Marginal::normal(0, 1), Marginal::normal(0, 1)},
         0.9,
         Distortion::es(0.9)},
    };
    for (const Case& k : cases) {
        const double truth = cod_at(k.m, k.u, k.h).value;
        McEstimate e = mc_cod_at(k.m, k.u, k.h, 200000, 2024, 20);
        CHECK(std::fabs(e.mean - truth) <= 4 * e.stderr_est);
        CHECK(e.stderr_est < 0.2);
    }
}

TEST_CASE("estimator: threshold form matches the explicit-level form bit for bit") {
    const BivariateModel m{Copula::gumbel(2), Marginal::gamma(0.5, 1),
                           Marginal::gamma(1.5, 1)};
    const Distortion g = Distortion::power(0.3);
    const double u = threshold_quantile(g, m.x);
    McEstimate via_g = mc_cod(m, g, Distortion::power(2), 50000, 7, 10);
    McEstimate via_u = mc_cod_at(m, u, Distortion::power(2), 50000, 7, 10);
    CHECK(via_g.mean == via_u.mean);
    CHECK(via_g.stderr_est == via_u.stderr_est);
    CHECK(via_g.n_accepted == via_u.n_accepted);
}

TEST_CASE("estimator: reproducible for a fixed seed, sensitive to it otherwise") {
    const BivariateModel m{Copula::fgm(-0.5), Marginal::normal(0, 1),
                           Marginal::gamma(2, 1)};
    McEstimate a = mc_cod_at(m, 0.9, Distortion::power(2), 20000, 31, 10);
    McEstimate b = mc_cod_at(m, 0.9, Distortion::power(2), 20000, 31, 10);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_est == b.stderr_est);
    McEstimate c = mc_cod_at(m, 0.9, Distortion::power(2), 20000, 32, 10);
    CHECK(a.mean != c.mean);
}

TEST_CASE("estimator: refuses a starved conditioning event") {
    const BivariateModel m{Copula::gumbel(2), Marginal::normal(0, 1),
                           Marginal::normal(0, 1)};
    // ~0.1% acceptance on 20k draws: far below the 100-draw floor per run.
    CHECK_THROWS_AS(mc_cod_at(m, 0.999, Distortion::power(2), 20000, 3, 200),
                    insufficient_acceptance);
    CHECK_THROWS_AS(mc_cod_at(m, 0.9, Distortion::power(2), 300, 3, 10),
                    insufficient_acceptance);
}

} // TEST_SUITE
